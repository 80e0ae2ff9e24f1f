#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "corruptkit/image.hpp"

namespace corruptkit {

/// Joint histogram over all three channels of every pixel.
struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  Histogram() = default;
  /// Throws InvalidInput unless bins divides 256 (1, 2, 4, ..., 256).
  explicit Histogram(int bins);
  int bins() const noexcept { return static_cast<int>(counts.size()); }
  void add(const ImageBuffer& img);
  bool operator==(const Histogram&) const = default;
};

/// Throws InvalidInput on an empty set.
Histogram pixel_histogram(std::span<const ImageBuffer> images, int bins = 256);

/// L1 distance of the normalized histograms, in [0, 2]. Throws InvalidInput
/// on a bin-count mismatch or an empty histogram.
double histogram_distance(const Histogram& a, const Histogram& b);

nlohmann::json histogram_to_json(const Histogram& h);

/// `count` distinct indices from [0, population) in increasing order, drawn
/// with a seeded partial shuffle. All indices when count >= population.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count,
                                        std::uint64_t seed);

/// (channels, height, width) tensor of float32 values.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, int height, int width, float fill = 0.0f);
  /// values.size() must equal channels * height * width.
  FeatureMap(int channels, int height, int width, std::vector<float> values);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t spatial() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  std::span<float> values() noexcept { return values_; }
  std::span<const float> values() const noexcept { return values_; }
  float& at(int c, int y, int x) noexcept {
    return values_[static_cast<std::size_t>(c) * spatial() + static_cast<std::size_t>(y) * width_ + x];
  }
  float at(int c, int y, int x) const noexcept {
    return values_[static_cast<std::size_t>(c) * spatial() + static_cast<std::size_t>(y) * width_ + x];
  }
  bool same_shape(const FeatureMap& o) const noexcept {
    return channels_ == o.channels_ && height_ == o.height_ && width_ == o.width_;
  }
  bool operator==(const FeatureMap&) const = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> values_;
};

/// Mean of (a - b)^2 over every element. Throws InvalidInput on a shape
/// mismatch or empty maps.
double feature_mse(const FeatureMap& a, const FeatureMap& b);

/// Channel Gram matrix F * F^T of the channels x (h * w) flattening,
/// row-major, accumulated in double.
std::vector<double> gram_matrix(const FeatureMap& f);

/// ||G(a) - G(b)||_F / ||G(b)||_F. Throws InvalidInput on a shape mismatch
/// or when b is identically zero.
double gram_relative_error(const FeatureMap& a, const FeatureMap& b);

/// Tensor file: magic "CKFM", then channels, height, width as little-endian
/// uint32, then packed little-endian float32 values in (c, y, x) order.
std::vector<std::uint8_t> encode_tensor(const FeatureMap& f);
FeatureMap decode_tensor(std::span<const std::uint8_t> bytes);
FeatureMap load_tensor(const std::filesystem::path& path);
void save_tensor(const FeatureMap& f, const std::filesystem::path& path);

}  // namespace corruptkit
