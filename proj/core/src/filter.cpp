#include "corruptkit/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "corruptkit/error.hpp"

namespace corruptkit {

Kernel2D::Kernel2D(int size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
  if (size <= 0 || size % 2 == 0) throw InvalidInput("kernel size must be odd and positive");
  if (weights_.size() != static_cast<std::size_t>(size) * size) {
    throw InvalidInput("kernel needs size*size weights");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidInput("kernel weights must be non-negative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidInput("kernel weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

int reflect_index(int i, int n) noexcept {
  if (n <= 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

std::vector<double> gaussian_weights(int radius, double sigma) {
  if (radius < 0) throw InvalidInput("radius must be >= 0");
  if (!(sigma > 0.0)) throw InvalidInput("sigma must be > 0");
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-static_cast<double>(k) * k / (2.0 * sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

Kernel2D motion_kernel(int radius, double sigma, double angle_deg) {
  if (radius < 1) throw InvalidInput("motion blur radius must be >= 1");
  const auto line = gaussian_weights(radius, sigma);
  const int size = 2 * radius + 1;
  std::vector<double> grid(static_cast<std::size_t>(size) * size, 0.0);

  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (int t = -radius; t <= radius; ++t) {
    const double w = line[static_cast<std::size_t>(t + radius)];
    const double px = radius + t * ct;
    const double py = radius - t * st;
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    auto splat = [&](int x, int y, double share) {
      if (share <= 0.0) return;
      x = std::clamp(x, 0, size - 1);
      y = std::clamp(y, 0, size - 1);
      grid[static_cast<std::size_t>(y) * size + x] += w * share;
    };
    splat(x0, y0, (1.0 - fx) * (1.0 - fy));
    splat(x0 + 1, y0, fx * (1.0 - fy));
    splat(x0, y0 + 1, (1.0 - fx) * fy);
    splat(x0 + 1, y0 + 1, fx * fy);
  }
  double sum = 0.0;
  for (double v : grid) sum += v;
  for (double& v : grid) v /= sum;
  return Kernel2D(size, std::move(grid));
}

namespace {

// Copy of `src` padded by `pad` pixels on every side with reflected samples.
FloatImage reflect_pad(const FloatImage& src, int pad) {
  const int c = src.channels;
  FloatImage out(src.width + 2 * pad, src.height + 2 * pad, c);
  std::vector<int> xs(static_cast<std::size_t>(out.width));
  for (int x = 0; x < out.width; ++x) xs[static_cast<std::size_t>(x)] = reflect_index(x - pad, src.width);
  for (int y = 0; y < out.height; ++y) {
    const int sy = reflect_index(y - pad, src.height);
    const float* srow = src.data.data() + static_cast<std::size_t>(sy) * src.width * c;
    float* drow = out.data.data() + static_cast<std::size_t>(y) * out.width * c;
    for (int x = 0; x < out.width; ++x) {
      const float* s = srow + static_cast<std::size_t>(xs[static_cast<std::size_t>(x)]) * c;
      std::copy(s, s + c, drow + static_cast<std::size_t>(x) * c);
    }
  }
  return out;
}

}  // namespace

FloatImage convolve(const FloatImage& src, const Kernel2D& kernel) {
  if (src.width == 0 || src.height == 0) throw InvalidInput("empty image");
  const int r = kernel.radius();
  const int c = src.channels;
  struct Tap {
    int dx, dy;
    float w;
  };
  std::vector<Tap> taps;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double w = kernel.at(dx, dy);
      if (w > 0.0) taps.push_back({dx, dy, static_cast<float>(w)});
    }
  }

  const FloatImage padded = reflect_pad(src, r);
  FloatImage out(src.width, src.height, c);
  const std::size_t row_len = static_cast<std::size_t>(src.width) * c;
  const std::size_t padded_stride = static_cast<std::size_t>(padded.width) * c;
  for (int y = 0; y < src.height; ++y) {
    float* drow = out.data.data() + static_cast<std::size_t>(y) * row_len;
    for (const Tap& t : taps) {
      const float* srow = padded.data.data() + static_cast<std::size_t>(y + r + t.dy) * padded_stride +
                          static_cast<std::size_t>(r + t.dx) * c;
      for (std::size_t i = 0; i < row_len; ++i) drow[i] += t.w * srow[i];
    }
  }
  return out;
}

FloatImage gaussian_blur(const FloatImage& src, int radius, double sigma) {
  if (src.width == 0 || src.height == 0) throw InvalidInput("empty image");
  const auto wd = gaussian_weights(radius, sigma);
  if (radius == 0) return src;
  std::vector<float> w(wd.begin(), wd.end());
  const int c = src.channels;
  const std::size_t row_len = static_cast<std::size_t>(src.width) * c;

  FloatImage tmp(src.width, src.height, c);
  std::vector<float> line(static_cast<std::size_t>(src.width + 2 * radius) * c);
  for (int y = 0; y < src.height; ++y) {
    const float* srow = src.data.data() + static_cast<std::size_t>(y) * row_len;
    for (int x = 0; x < src.width + 2 * radius; ++x) {
      const float* s = srow + static_cast<std::size_t>(reflect_index(x - radius, src.width)) * c;
      std::copy(s, s + c, line.data() + static_cast<std::size_t>(x) * c);
    }
    float* drow = tmp.data.data() + static_cast<std::size_t>(y) * row_len;
    for (int k = 0; k <= 2 * radius; ++k) {
      const float wk = w[static_cast<std::size_t>(k)];
      const float* s = line.data() + static_cast<std::size_t>(k) * c;
      for (std::size_t i = 0; i < row_len; ++i) drow[i] += wk * s[i];
    }
  }

  FloatImage out(src.width, src.height, c);
  for (int y = 0; y < src.height; ++y) {
    float* drow = out.data.data() + static_cast<std::size_t>(y) * row_len;
    for (int k = -radius; k <= radius; ++k) {
      const float wk = w[static_cast<std::size_t>(k + radius)];
      const float* s = tmp.data.data() + static_cast<std::size_t>(reflect_index(y + k, src.height)) * row_len;
      for (std::size_t i = 0; i < row_len; ++i) drow[i] += wk * s[i];
    }
  }
  return out;
}

ImageBuffer gaussian_blur(const ImageBuffer& img, int radius, double sigma) {
  if (img.empty()) throw InvalidInput("empty image");
  if (radius == 0) {
    gaussian_weights(radius, sigma);  // validates sigma
    return img;
  }
  return to_u8(gaussian_blur(to_float(img, 1.0f), radius, sigma), 1.0f);
}

FloatImage resize_bilinear(const FloatImage& src, int width, int height) {
  if (src.width == 0 || src.height == 0) throw InvalidInput("empty image");
  const int c = src.channels;
  FloatImage out(width, height, c);
  const double sx = static_cast<double>(src.width) / width;
  const double sy = static_cast<double>(src.height) / height;
  for (int y = 0; y < height; ++y) {
    double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(src.height - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double ty = fy - y0;
    for (int x = 0; x < width; ++x) {
      double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(src.width - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double tx = fx - x0;
      for (int ch = 0; ch < c; ++ch) {
        const double top = src.at(x0, y0, ch) * (1.0 - tx) + src.at(x1, y0, ch) * tx;
        const double bottom = src.at(x0, y1, ch) * (1.0 - tx) + src.at(x1, y1, ch) * tx;
        out.at(x, y, ch) = static_cast<float>(top * (1.0 - ty) + bottom * ty);
      }
    }
  }
  return out;
}

}  // namespace corruptkit
