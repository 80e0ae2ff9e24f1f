#include "corruptkit/corruptions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "corruptkit/color.hpp"
#include "corruptkit/error.hpp"
#include "corruptkit/filter.hpp"
#include "corruptkit/plasma.hpp"

namespace corruptkit {

ImageBuffer apply_brightness(const ImageBuffer& img, double delta_v) {
  if (!(delta_v >= 0.0 && delta_v <= 1.0)) throw InvalidInput("delta_v must be in [0, 1]");
  // With hue and saturation held fixed, raising V scales every channel by
  // v' / v, so the result depends only on (max channel, channel value).
  std::vector<std::uint8_t> lut(256 * 256);
  for (int mx = 0; mx < 256; ++mx) {
    const double v = mx / 255.0;
    const double v_new = std::min(1.0, v + delta_v);
    for (int c = 0; c <= mx; ++c) {
      lut[mx * 256 + c] = mx == 0 ? clamp_round_u8(v_new * 255.0) : clamp_round_u8(c * (v_new / v));
    }
  }
  ImageBuffer out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const int mx = std::max({src[i], src[i + 1], src[i + 2]});
    const std::uint8_t* row = lut.data() + mx * 256;
    dst[i] = row[src[i]];
    dst[i + 1] = row[src[i + 1]];
    dst[i + 2] = row[src[i + 2]];
  }
  return out;
}

ImageBuffer apply_dark(const ImageBuffer& img, double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) throw InvalidInput("dark scale must be in (0, 1]");
  ImageBuffer out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  std::array<std::uint8_t, 256> lut{};
  for (int c = 0; c < 256; ++c) lut[c] = clamp_round_u8(c * scale);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

ImageBuffer apply_dark(const ImageBuffer& img, const DarkParams& params, SeededRng& rng) {
  if (!params.shot_noise) return apply_dark(img, params.scale);
  if (!(params.scale > 0.0 && params.scale <= 1.0)) throw InvalidInput("dark scale must be in (0, 1]");
  if (!(params.full_scale_photons > 0.0)) throw InvalidInput("full_scale_photons must be > 0");
  SeededRng noise = rng.split("shot_noise");
  const double budget = params.full_scale_photons * params.scale;
  ImageBuffer out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double level = src[i] / 255.0 * params.scale;
    const auto photons = noise.poisson(level * budget);
    dst[i] = clamp_round_u8(static_cast<double>(photons) / budget * 255.0);
  }
  return out;
}

ImageBuffer apply_fog(const ImageBuffer& img, double thickness, double smoothness, SeededRng& rng) {
  if (!(thickness > 0.0)) throw InvalidInput("fog thickness must be > 0");
  if (!(smoothness > 0.0)) throw InvalidInput("fog smoothness must be > 0");
  if (img.empty()) return img;

  SeededRng plasma_rng = rng.split("plasma");
  const FloatImage field = plasma_fractal(plasma_side_for(img.width(), img.height()), smoothness, plasma_rng);

  const auto src = img.data();
  const double max_x = *std::max_element(src.begin(), src.end()) / 255.0;
  const double rescale = max_x / (max_x + thickness);

  ImageBuffer out(img.width(), img.height());
  auto dst = out.data();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double fog = thickness * field.at(x, y, 0);
      const std::size_t base = (static_cast<std::size_t>(y) * img.width() + x) * 3;
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp((src[base + c] / 255.0 + fog) * rescale, 0.0, 1.0);
        dst[base + c] = clamp_round_u8(v * 255.0);
      }
    }
  }
  return out;
}

namespace snow {

FloatImage make_layer(int width, int height, const SnowParams& params, SeededRng& rng) {
  if (!(params.stddev > 0.0)) throw InvalidInput("snow std must be > 0");
  if (!(params.scale >= 1.0)) throw InvalidInput("snow scale must be >= 1");
  const int radius = static_cast<int>(std::lround(params.blur_radius));
  if (radius < 1 || !(params.blur_std > 0.0)) throw InvalidInput("snow blur radius must be >= 1, blur std > 0");

  const int lw = std::max(1, static_cast<int>(std::ceil(width / params.scale)));
  const int lh = std::max(1, static_cast<int>(std::ceil(height / params.scale)));
  SeededRng noise = rng.split("snow_noise");
  FloatImage coarse(lw, lh, 1);
  for (float& v : coarse.data) v = static_cast<float>(noise.normal(params.mean, params.stddev));

  FloatImage layer = resize_bilinear(coarse, width, height);
  for (float& v : layer.data) {
    if (v < params.threshold) v = 0.0f;
    v = std::clamp(v, 0.0f, 1.0f);
  }

  SeededRng angle_rng = rng.split("angle");
  const double angle = angle_rng.uniform(-135.0, -45.0);
  return convolve(layer, motion_kernel(radius, params.blur_std, angle));
}

FloatImage desaturate(const FloatImage& scene, double blend) {
  FloatImage out(scene.width, scene.height, scene.channels);
  const auto pixels = static_cast<std::size_t>(scene.width) * scene.height;
  for (std::size_t p = 0; p < pixels; ++p) {
    const float* s = scene.data.data() + p * 3;
    float* d = out.data.data() + p * 3;
    const double gray = (static_cast<double>(s[0]) + s[1] + s[2]) / 3.0;
    const double lifted = gray * 1.5 + 0.5;
    for (int c = 0; c < 3; ++c) {
      d[c] = static_cast<float>(blend * s[c] + (1.0 - blend) * std::max<double>(s[c], lifted));
    }
  }
  return out;
}

}  // namespace snow

ImageBuffer apply_snow(const ImageBuffer& img, const SnowParams& params, SeededRng& rng) {
  if (!(params.blend >= 0.0 && params.blend <= 1.0)) throw InvalidInput("snow blend must be in [0, 1]");
  if (img.empty()) return img;
  const int w = img.width();
  const int h = img.height();
  const FloatImage layer = snow::make_layer(w, h, params, rng);
  const FloatImage scene = snow::desaturate(to_float(img), params.blend);

  ImageBuffer out(w, h);
  auto dst = out.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double flakes = static_cast<double>(layer.at(x, y, 0)) + layer.at(w - 1 - x, h - 1 - y, 0);
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp(scene.at(x, y, c) + flakes, 0.0, 1.0);
        dst[(static_cast<std::size_t>(y) * w + x) * 3 + c] = clamp_round_u8(v * 255.0);
      }
    }
  }
  return out;
}

ImageBuffer apply_motion_blur(const ImageBuffer& img, int radius, double sigma, SeededRng& rng) {
  if (radius < 1) throw InvalidInput("motion blur radius must be >= 1");
  if (!(sigma > 0.0)) throw InvalidInput("motion blur sigma must be > 0");
  if (img.empty()) return img;
  SeededRng angle_rng = rng.split("angle");
  const double angle = angle_rng.uniform(-45.0, 45.0);
  const Kernel2D kernel = motion_kernel(radius, sigma, angle);
  return to_u8(convolve(to_float(img, 1.0f), kernel), 1.0f);
}

ImageBuffer apply_color_quant(const ImageBuffer& img, int bits) {
  if (bits < 1 || bits > 8) throw InvalidInput("color quant bits must be in [1, 8]");
  const auto mask = static_cast<std::uint8_t>(0xFFu << (8 - bits));
  ImageBuffer out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] & mask;
  return out;
}

ImageBuffer apply_corruption(const ImageBuffer& img, const CorruptionSpec& spec, std::uint64_t seed) {
  SeededRng rng(seed);
  return std::visit(
      [&](const auto& p) -> ImageBuffer {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BrightnessParams>) {
          return apply_brightness(img, p.delta_v);
        } else if constexpr (std::is_same_v<T, DarkParams>) {
          return apply_dark(img, p, rng);
        } else if constexpr (std::is_same_v<T, FogParams>) {
          return apply_fog(img, p.thickness, p.smoothness, rng);
        } else if constexpr (std::is_same_v<T, SnowParams>) {
          return apply_snow(img, p, rng);
        } else if constexpr (std::is_same_v<T, MotionBlurParams>) {
          return apply_motion_blur(img, p.radius, p.sigma, rng);
        } else if constexpr (std::is_same_v<T, ColorQuantParams>) {
          return apply_color_quant(img, p.bits);
        } else {
          throw InvalidInput(std::string(to_string(spec.kind)) + " is a scene-level corruption");
        }
      },
      spec.params);
}

}  // namespace corruptkit
