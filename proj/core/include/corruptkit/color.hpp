#pragma once

#include <cstdint>

namespace corruptkit {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

/// Hexcone HSV. h in degrees [0, 360), s and v in [0, 1].
struct HsvPixel {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

HsvPixel rgb_to_hsv(Rgb p) noexcept;

/// Channels rounded to nearest and clamped to [0, 255].
Rgb hsv_to_rgb(const HsvPixel& p) noexcept;

}  // namespace corruptkit
