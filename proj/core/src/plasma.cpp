#include "corruptkit/plasma.hpp"

#include <algorithm>

#include "corruptkit/error.hpp"

namespace corruptkit {

int plasma_side_for(int width, int height) noexcept {
  int side = 2;
  while (side < width || side < height) side *= 2;
  return side;
}

FloatImage plasma_fractal(int side, double wibble_decay, SeededRng& rng) {
  if (side < 2 || (side & (side - 1)) != 0) {
    throw InvalidInput("plasma side must be a power of two >= 2, got " + std::to_string(side));
  }
  if (!(wibble_decay > 0.0)) throw InvalidInput("wibble_decay must be > 0");

  std::vector<double> map(static_cast<std::size_t>(side) * side, 0.0);
  const auto mask = side - 1;  // power-of-two wrap
  auto at = [&](int x, int y) -> double& {
    return map[static_cast<std::size_t>(y & mask) * side + static_cast<std::size_t>(x & mask)];
  };

  double wibble = 100.0;
  for (int step = side; step >= 2; step /= 2) {
    const int half = step / 2;
    // Square step: cell centers from their four corners.
    for (int y = 0; y < side; y += step) {
      for (int x = 0; x < side; x += step) {
        const double sum = at(x, y) + at(x + step, y) + at(x, y + step) + at(x + step, y + step);
        at(x + half, y + half) = sum / 4.0 + rng.uniform(-wibble, wibble);
      }
    }
    // Diamond step: edge midpoints from their four axial neighbours, first
    // on grid rows, then on grid columns.
    for (int y = 0; y < side; y += step) {
      for (int x = half; x < side; x += step) {
        const double sum = at(x - half, y) + at(x + half, y) + at(x, y - half) + at(x, y + half);
        at(x, y) = sum / 4.0 + rng.uniform(-wibble, wibble);
      }
    }
    for (int y = half; y < side; y += step) {
      for (int x = 0; x < side; x += step) {
        const double sum = at(x - half, y) + at(x + half, y) + at(x, y - half) + at(x, y + half);
        at(x, y) = sum / 4.0 + rng.uniform(-wibble, wibble);
      }
    }
    wibble /= wibble_decay;
  }

  const auto [lo, hi] = std::minmax_element(map.begin(), map.end());
  const double min_v = *lo;
  const double range = *hi - *lo;
  FloatImage out(side, side, 1);
  for (std::size_t i = 0; i < map.size(); ++i) {
    out.data[i] = range > 0.0 ? static_cast<float>((map[i] - min_v) / range) : 0.0f;
  }
  return out;
}

}  // namespace corruptkit
