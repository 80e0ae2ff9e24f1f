#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace corruptkit {

/// 8-bit interleaved RGB raster, row-major.
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  ImageBuffer() = default;
  /// Zero-filled image. Throws InvalidInput on negative dimensions.
  ImageBuffer(int width, int height);
  /// Takes ownership of `data`; its size must equal width * height * 3.
  ImageBuffer(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t* pixel(int x, int y) noexcept {
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }
  const std::uint8_t* pixel(int x, int y) const noexcept {
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  bool operator==(const ImageBuffer&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Floating-point raster with an arbitrary channel count, used as working
/// storage by the filters and corruption recipes.
struct FloatImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  FloatImage() = default;
  FloatImage(int w, int h, int c, float fill = 0.0f)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {}

  float& at(int x, int y, int c) noexcept {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c) const noexcept {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

/// Channel values scaled by `scale` (1/255 gives the unit interval).
FloatImage to_float(const ImageBuffer& img, float scale = 1.0f / 255.0f);

/// Inverse of to_float: multiplies by `scale`, clamps to [0, 255] and rounds
/// half away from zero. `src` must have three channels.
ImageBuffer to_u8(const FloatImage& src, float scale = 255.0f);

/// Mean over all channel values of all pixels. Throws on an empty image.
double mean_intensity(const ImageBuffer& img);

inline std::uint8_t clamp_round_u8(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(v + 0.5);
}

}  // namespace corruptkit
