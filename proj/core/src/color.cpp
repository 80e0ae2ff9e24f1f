#include "corruptkit/color.hpp"

#include <algorithm>
#include <cmath>

#include "corruptkit/image.hpp"

namespace corruptkit {

HsvPixel rgb_to_hsv(Rgb p) noexcept {
  const double r = p.r / 255.0;
  const double g = p.g / 255.0;
  const double b = p.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;

  HsvPixel out;
  out.v = mx;
  out.s = mx > 0.0 ? d / mx : 0.0;
  if (d > 0.0) {
    double h;
    if (p.r >= p.g && p.r >= p.b) {
      h = (g - b) / d;
    } else if (p.g >= p.b) {
      h = (b - r) / d + 2.0;
    } else {
      h = (r - g) / d + 4.0;
    }
    h *= 60.0;
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
  }
  return out;
}

Rgb hsv_to_rgb(const HsvPixel& p) noexcept {
  const double v = std::clamp(p.v, 0.0, 1.0);
  const double s = std::clamp(p.s, 0.0, 1.0);
  const double c = v * s;
  double hp = std::fmod(p.h, 360.0);
  if (hp < 0.0) hp += 360.0;
  hp /= 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = v - c;

  double r = 0.0, g = 0.0, b = 0.0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {clamp_round_u8((r + m) * 255.0), clamp_round_u8((g + m) * 255.0),
          clamp_round_u8((b + m) * 255.0)};
}

}  // namespace corruptkit
