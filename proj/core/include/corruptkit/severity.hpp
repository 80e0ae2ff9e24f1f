#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json_fwd.hpp>

namespace corruptkit {

enum class Severity { kEasy, kModerate, kHard };

inline constexpr std::array<Severity, 3> kAllSeverities = {
    Severity::kEasy, Severity::kModerate, Severity::kHard};

enum class CorruptionKind {
  kBrightness,
  kDark,
  kFog,
  kSnow,
  kMotionBlur,
  kColorQuant,
  kCameraCrash,
  kFrameLost,
};

inline constexpr std::array<CorruptionKind, 8> kAllKinds = {
    CorruptionKind::kBrightness, CorruptionKind::kDark,       CorruptionKind::kFog,
    CorruptionKind::kSnow,       CorruptionKind::kMotionBlur, CorruptionKind::kColorQuant,
    CorruptionKind::kCameraCrash, CorruptionKind::kFrameLost};

std::string_view to_string(Severity s) noexcept;
std::string_view to_string(CorruptionKind k) noexcept;
std::optional<Severity> parse_severity(std::string_view name) noexcept;
std::optional<CorruptionKind> parse_kind(std::string_view name) noexcept;

/// True for the six operators that transform a single image in isolation.
bool is_per_image(CorruptionKind k) noexcept;

struct BrightnessParams {
  double delta_v = 0.0;
  bool operator==(const BrightnessParams&) const = default;
};

struct DarkParams {
  double scale = 1.0;
  // Optional Poisson shot noise; off unless a parameter file enables it.
  bool shot_noise = false;
  double full_scale_photons = 1000.0;
  bool operator==(const DarkParams&) const = default;
};

struct FogParams {
  double thickness = 0.0;
  double smoothness = 2.0;
  bool operator==(const FogParams&) const = default;
};

struct SnowParams {
  double mean = 0.0;
  double stddev = 0.0;
  double scale = 1.0;
  double threshold = 0.0;
  double blur_radius = 0.0;
  double blur_std = 1.0;
  double blend = 1.0;
  bool operator==(const SnowParams&) const = default;
};

struct MotionBlurParams {
  int radius = 1;
  double sigma = 1.0;
  bool operator==(const MotionBlurParams&) const = default;
};

struct ColorQuantParams {
  int bits = 8;
  bool operator==(const ColorQuantParams&) const = default;
};

struct CameraCrashParams {
  int dropped_cameras = 0;
  bool operator==(const CameraCrashParams&) const = default;
};

struct FrameLostParams {
  double probability = 0.0;
  // Drop every camera of a sample together instead of per camera.
  bool whole_sample = false;
  bool operator==(const FrameLostParams&) const = default;
};

using CorruptionParams =
    std::variant<BrightnessParams, DarkParams, FogParams, SnowParams, MotionBlurParams,
                 ColorQuantParams, CameraCrashParams, FrameLostParams>;

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::kBrightness;
  Severity severity = Severity::kEasy;
  CorruptionParams params;
  bool operator==(const CorruptionSpec&) const = default;
};

/// The built-in easy/moderate/hard presets for every kind.
CorruptionParams default_params(CorruptionKind kind, Severity severity);

/// Resolves (kind, severity) to parameters, optionally overridden by a
/// parameter document.
///
/// Document layout, every key optional:
///
///   { "fog":  { "easy": [2.0, 2.0], "hard": {"thickness": 3.5} },
///     "dark": { "shot_noise": true, "moderate": 0.45 },
///     "frame_lost": { "whole_sample": true } }
///
/// A severity entry is a scalar (single-parameter kinds), an array in tuple
/// order, or an object of named fields layered over the preset. Non-severity
/// keys are options applied to all three severities.
class ParameterTable {
 public:
  ParameterTable();
  explicit ParameterTable(const nlohmann::json& overrides);

  static ParameterTable from_file(const std::string& path);

  CorruptionSpec resolve(CorruptionKind kind, Severity severity) const;

 private:
  std::map<std::pair<CorruptionKind, Severity>, CorruptionParams> table_;
};

/// Shorthand for ParameterTable{}.resolve(kind, severity).
CorruptionSpec resolve_spec(CorruptionKind kind, Severity severity);

/// Parameters in tuple order, as listed in the severity presets.
nlohmann::json params_to_json(const CorruptionParams& params);

}  // namespace corruptkit
