#pragma once

#include <cstdint>

#include "corruptkit/image.hpp"
#include "corruptkit/rng.hpp"
#include "corruptkit/severity.hpp"

namespace corruptkit {

/// v' = min(1, v + delta_v) in HSV space.
ImageBuffer apply_brightness(const ImageBuffer& img, double delta_v);

/// c' = round(c * scale).
ImageBuffer apply_dark(const ImageBuffer& img, double scale);
/// As above; with params.shot_noise each scaled channel is replaced by a
/// Poisson photon count with budget full_scale_photons * scale at c = 255.
ImageBuffer apply_dark(const ImageBuffer& img, const DarkParams& params, SeededRng& rng);

/// Additive plasma fog, rescaled by max / (max + thickness).
ImageBuffer apply_fog(const ImageBuffer& img, double thickness, double smoothness,
                      SeededRng& rng);

ImageBuffer apply_snow(const ImageBuffer& img, const SnowParams& params, SeededRng& rng);

/// Gaussian-weighted line blur at an angle drawn from U[-45, 45).
ImageBuffer apply_motion_blur(const ImageBuffer& img, int radius, double sigma,
                              SeededRng& rng);

/// Keeps the top `bits` bits of every channel.
ImageBuffer apply_color_quant(const ImageBuffer& img, int bits);

/// Dispatches one of the six per-image kinds. Camera Crash and Frame Lost act
/// on whole scenes and are rejected here with InvalidInput.
ImageBuffer apply_corruption(const ImageBuffer& img, const CorruptionSpec& spec,
                             std::uint64_t seed);

namespace snow {

/// Thresholded, upscaled and motion-blurred snow layer (single channel,
/// values in [0, 1]).
FloatImage make_layer(int width, int height, const SnowParams& params, SeededRng& rng);

/// Scene whitening: blend * x + (1 - blend) * max(x, gray * 1.5 + 0.5) where
/// gray is the per-pixel channel mean. Input and output are in [0, 1].
FloatImage desaturate(const FloatImage& scene, double blend);

}  // namespace snow

}  // namespace corruptkit
