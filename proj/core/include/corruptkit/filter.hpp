#pragma once

#include <vector>

#include "corruptkit/image.hpp"

namespace corruptkit {

/// Square, odd-sided, normalized convolution kernel.
class Kernel2D {
 public:
  /// Throws InvalidInput if size is even or weights.size() != size * size,
  /// any weight is negative, or the weights do not sum to 1 within 1e-9.
  Kernel2D(int size, std::vector<double> weights);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double at(int dx, int dy) const noexcept {
    return weights_[static_cast<std::size_t>(dy + radius()) * size_ + (dx + radius())];
  }

 private:
  int size_;
  std::vector<double> weights_;
};

/// Reflect (mirror without repeating the edge sample) an out-of-range index
/// back into [0, n).
int reflect_index(int i, int n) noexcept;

/// Normalized, truncated 1-D Gaussian of length 2 * radius + 1.
std::vector<double> gaussian_weights(int radius, double sigma);

/// Line kernel: Gaussian weights (std `sigma`) along a segment of length
/// 2 * radius + 1 through the center, rotated by `angle_deg`
/// (counter-clockwise, image y axis pointing down) and rasterized with
/// bilinear splatting.
Kernel2D motion_kernel(int radius, double sigma, double angle_deg);

/// 2-D convolution of every channel with reflect padding. Zero taps are
/// skipped, so sparse line kernels stay cheap.
FloatImage convolve(const FloatImage& src, const Kernel2D& kernel);

/// Separable Gaussian with reflect padding, computed in float per channel.
FloatImage gaussian_blur(const FloatImage& src, int radius, double sigma);

/// Throws InvalidInput("empty image") on a zero-sized image.
ImageBuffer gaussian_blur(const ImageBuffer& img, int radius, double sigma);

/// Bilinear resize with pixel-center alignment and edge clamping.
FloatImage resize_bilinear(const FloatImage& src, int width, int height);

}  // namespace corruptkit
