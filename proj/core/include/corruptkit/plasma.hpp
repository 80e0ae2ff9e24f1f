#pragma once

#include <vector>

#include "corruptkit/image.hpp"
#include "corruptkit/rng.hpp"

namespace corruptkit {

/// Diamond-square midpoint displacement on a toroidal `side` x `side` grid.
/// The displacement amplitude starts at 100 and is divided by
/// `wibble_decay` after every level; the result is rescaled to [0, 1].
/// Returns a single-channel FloatImage.
///
/// Throws InvalidInput if side is not a power of two >= 2 or
/// wibble_decay <= 0.
FloatImage plasma_fractal(int side, double wibble_decay, SeededRng& rng);

/// Smallest power of two >= max(width, height, 2).
int plasma_side_for(int width, int height) noexcept;

}  // namespace corruptkit
