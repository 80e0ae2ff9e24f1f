#pragma once

#include <cstdint>
#include <string_view>

#include "corruptkit/severity.hpp"

namespace corruptkit {

/// Sample index used for per-scene draws (Camera Crash).
inline constexpr std::uint64_t kSceneLevel = ~std::uint64_t{0};

/// First 8 bytes (big-endian) of SHA-256 over a length-prefixed encoding of
/// the tuple. Stable across platforms and independent of scheduling.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view scene_id,
                          std::uint64_t sample_index, std::string_view camera_name,
                          CorruptionKind kind, Severity severity);

}  // namespace corruptkit
