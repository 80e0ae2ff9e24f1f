#include "corruptkit/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "corruptkit/error.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/rng.hpp"

namespace corruptkit {

Histogram::Histogram(int bins) {
  if (bins < 1 || bins > 256 || 256 % bins != 0) {
    throw InvalidInput("histogram bins must divide 256, got " + std::to_string(bins));
  }
  counts.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(const ImageBuffer& img) {
  const int shift = std::countr_zero(256u / static_cast<unsigned>(counts.size()));
  for (auto v : img.data()) ++counts[static_cast<std::size_t>(v >> shift)];
  total += img.data().size();
}

Histogram pixel_histogram(std::span<const ImageBuffer> images, int bins) {
  if (images.empty()) throw InvalidInput("pixel_histogram needs at least one image");
  Histogram h(bins);
  for (const auto& img : images) h.add(img);
  return h;
}

double histogram_distance(const Histogram& a, const Histogram& b) {
  if (a.bins() != b.bins()) {
    throw InvalidInput("histogram bin mismatch: " + std::to_string(a.bins()) + " vs " + std::to_string(b.bins()));
  }
  if (a.total == 0 || b.total == 0) throw InvalidInput("histogram_distance needs non-empty histograms");
  const double ta = static_cast<double>(a.total);
  const double tb = static_cast<double>(b.total);
  double d = 0.0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    d += std::fabs(static_cast<double>(a.counts[i]) / ta - static_cast<double>(b.counts[i]) / tb);
  }
  return d;
}

nlohmann::json histogram_to_json(const Histogram& h) {
  return {{"bins", h.bins()}, {"total", h.total}, {"counts", h.counts}};
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> idx(population);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (count >= population) return idx;
  SeededRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(population - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

FeatureMap::FeatureMap(int channels, int height, int width, float fill)
    : channels_(channels), height_(height), width_(width) {
  if (channels < 0 || height < 0 || width < 0) throw InvalidInput("negative feature map shape");
  values_.assign(static_cast<std::size_t>(channels) * spatial(), fill);
}

FeatureMap::FeatureMap(int channels, int height, int width, std::vector<float> values)
    : channels_(channels), height_(height), width_(width), values_(std::move(values)) {
  if (channels < 0 || height < 0 || width < 0) throw InvalidInput("negative feature map shape");
  if (values_.size() != static_cast<std::size_t>(channels) * spatial()) {
    throw InvalidInput("feature map has " + std::to_string(values_.size()) + " values for shape (" +
                       std::to_string(channels) + ", " + std::to_string(height) + ", " + std::to_string(width) +
                       ")");
  }
}

namespace {

void require_same_shape(const FeatureMap& a, const FeatureMap& b) {
  if (!a.same_shape(b)) {
    auto shape = [](const FeatureMap& f) {
      return "(" + std::to_string(f.channels()) + ", " + std::to_string(f.height()) + ", " +
             std::to_string(f.width()) + ")";
    };
    throw InvalidInput("feature map shape mismatch: " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

double feature_mse(const FeatureMap& a, const FeatureMap& b) {
  require_same_shape(a, b);
  const auto va = a.values();
  const auto vb = b.values();
  if (va.empty()) throw InvalidInput("feature_mse on empty maps");
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double d = static_cast<double>(va[i]) - static_cast<double>(vb[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(va.size());
}

std::vector<double> gram_matrix(const FeatureMap& f) {
  const auto c = static_cast<std::size_t>(f.channels());
  const std::size_t n = f.spatial();
  const auto v = f.values();
  std::vector<double> g(c * c, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    const float* fi = v.data() + i * n;
    for (std::size_t j = i; j < c; ++j) {
      const float* fj = v.data() + j * n;
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += static_cast<double>(fi[k]) * static_cast<double>(fj[k]);
      g[i * c + j] = dot;
      g[j * c + i] = dot;
    }
  }
  return g;
}

double gram_relative_error(const FeatureMap& a, const FeatureMap& b) {
  require_same_shape(a, b);
  const auto ga = gram_matrix(a);
  const auto gb = gram_matrix(b);
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    diff += (ga[i] - gb[i]) * (ga[i] - gb[i]);
    ref += gb[i] * gb[i];
  }
  if (ref == 0.0) throw InvalidInput("gram_relative_error: reference feature map is identically zero");
  return std::sqrt(diff) / std::sqrt(ref);
}

namespace {

constexpr char kTensorMagic[4] = {'C', 'K', 'F', 'M'};
constexpr std::size_t kTensorHeader = 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const FeatureMap& f) {
  static_assert(std::endian::native == std::endian::little, "tensor I/O assumes a little-endian host");
  std::vector<std::uint8_t> out(kTensorMagic, kTensorMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(f.channels()));
  put_u32(out, static_cast<std::uint32_t>(f.height()));
  put_u32(out, static_cast<std::uint32_t>(f.width()));
  const auto v = f.values();
  const std::size_t offset = out.size();
  out.resize(offset + v.size() * sizeof(float));
  std::memcpy(out.data() + offset, v.data(), v.size() * sizeof(float));
  return out;
}

FeatureMap decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTensorHeader || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw InvalidInput("not a feature tensor file (bad magic)");
  }
  const auto c = get_u32(bytes.data() + 4);
  const auto h = get_u32(bytes.data() + 8);
  const auto w = get_u32(bytes.data() + 12);
  const std::uint64_t count = static_cast<std::uint64_t>(c) * h * w;
  if (bytes.size() - kTensorHeader != count * sizeof(float)) {
    throw InvalidInput("feature tensor payload is " + std::to_string(bytes.size() - kTensorHeader) +
                       " bytes, expected " + std::to_string(count * sizeof(float)));
  }
  std::vector<float> values(count);
  std::memcpy(values.data(), bytes.data() + kTensorHeader, count * sizeof(float));
  return FeatureMap(static_cast<int>(c), static_cast<int>(h), static_cast<int>(w), std::move(values));
}

FeatureMap load_tensor(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_tensor(bytes);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_tensor(const FeatureMap& f, const std::filesystem::path& path) { write_file(path, encode_tensor(f)); }

}  // namespace corruptkit
