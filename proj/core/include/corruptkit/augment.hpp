#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "corruptkit/image.hpp"
#include "corruptkit/severity.hpp"

namespace corruptkit {

/// Training-time augmentation settings. Only the six per-image kinds are
/// eligible.
struct AugmentPolicy {
  std::map<CorruptionKind, double> probability;  // enabled kinds -> P(apply)
  std::optional<Severity> severity;               // fixed level, or uniform when empty
  std::uint64_t seed = 0;
  ParameterTable params;

  /// Throws InvalidInput when no kind is enabled, a kind is scene-level, or a
  /// probability lies outside [0, 1].
  void validate() const;

  /// {"kinds": {"fog": 0.5, "snow": 0.2}, "severity": "hard" | "uniform",
  ///  "seed": 7, "params": {...parameter file layout...}}
  static AugmentPolicy from_json(const nlohmann::json& doc);
};

struct AugmentDecision {
  bool applied = false;
  CorruptionSpec spec;
  std::uint64_t seed = 0;  // seed passed to apply_corruption
};

/// The draw for one step: a kind chosen uniformly among the enabled ones,
/// kept with its probability, then a severity and an operator seed. Depends
/// only on (policy, step_index).
AugmentDecision plan_augment(const AugmentPolicy& policy, std::uint64_t step_index);

/// Applies at most one corruption. The output equals
/// apply_corruption(img, decision.spec, decision.seed) for the planned step.
ImageBuffer augment(const ImageBuffer& img, const AugmentPolicy& policy, std::uint64_t step_index,
                    AugmentDecision* decision = nullptr);

/// Same for a contiguous H x W x C 8-bit array; C must be 3.
std::vector<std::uint8_t> augment(std::span<const std::uint8_t> pixels, int height, int width, int channels,
                                  const AugmentPolicy& policy, std::uint64_t step_index);

}  // namespace corruptkit
