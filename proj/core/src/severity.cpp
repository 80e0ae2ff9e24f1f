#include "corruptkit/severity.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "corruptkit/error.hpp"

namespace corruptkit {

namespace {

constexpr std::array<std::string_view, 3> kSeverityNames = {"easy", "moderate", "hard"};
constexpr std::array<std::string_view, 8> kKindNames = {
    "brightness", "dark", "fog", "snow", "motion_blur", "color_quant", "camera_crash", "frame_lost"};

std::size_t idx(Severity s) { return static_cast<std::size_t>(s); }

}  // namespace

std::string_view to_string(Severity s) noexcept { return kSeverityNames[idx(s)]; }
std::string_view to_string(CorruptionKind k) noexcept { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<Severity> parse_severity(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kSeverityNames.size(); ++i) {
    if (kSeverityNames[i] == name) return static_cast<Severity>(i);
  }
  return std::nullopt;
}

std::optional<CorruptionKind> parse_kind(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<CorruptionKind>(i);
  }
  return std::nullopt;
}

bool is_per_image(CorruptionKind k) noexcept {
  return k != CorruptionKind::kCameraCrash && k != CorruptionKind::kFrameLost;
}

CorruptionParams default_params(CorruptionKind kind, Severity severity) {
  const std::size_t l = idx(severity);
  switch (kind) {
    case CorruptionKind::kBrightness: {
      constexpr double dv[] = {0.2, 0.4, 0.5};
      return BrightnessParams{dv[l]};
    }
    case CorruptionKind::kDark: {
      constexpr double scale[] = {0.5, 0.4, 0.3};
      return DarkParams{scale[l]};
    }
    case CorruptionKind::kFog: {
      constexpr FogParams fog[] = {{2.0, 2.0}, {2.5, 1.5}, {3.0, 1.4}};
      return fog[l];
    }
    case CorruptionKind::kSnow: {
      constexpr SnowParams snow[] = {
          {0.1, 0.3, 3.0, 0.5, 10.0, 4.0, 0.8},
          {0.2, 0.3, 2.0, 0.5, 12.0, 4.0, 0.7},
          {0.55, 0.3, 4.0, 0.9, 12.0, 8.0, 0.7},
      };
      return snow[l];
    }
    case CorruptionKind::kMotionBlur: {
      constexpr MotionBlurParams motion[] = {{15, 5.0}, {15, 12.0}, {20, 15.0}};
      return motion[l];
    }
    case CorruptionKind::kColorQuant: {
      constexpr int bits[] = {5, 4, 3};
      return ColorQuantParams{bits[l]};
    }
    case CorruptionKind::kCameraCrash: {
      constexpr int dropped[] = {2, 4, 5};
      return CameraCrashParams{dropped[l]};
    }
    case CorruptionKind::kFrameLost: {
      const double p[] = {2.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0};
      return FrameLostParams{p[l]};
    }
  }
  throw InvalidInput("unknown corruption kind");
}

namespace {

using nlohmann::json;

// Field names in tuple order, per kind.
const std::vector<std::string>& field_names(CorruptionKind kind) {
  static const std::vector<std::vector<std::string>> names = {
      {"delta_v"},
      {"scale"},
      {"thickness", "smoothness"},
      {"mean", "std", "scale", "threshold", "blur_radius", "blur_std", "blend"},
      {"radius", "sigma"},
      {"bits"},
      {"dropped_cameras"},
      {"probability"},
  };
  return names[static_cast<std::size_t>(kind)];
}

std::vector<double*> field_slots(CorruptionParams& params) {
  return std::visit(
      [](auto& p) -> std::vector<double*> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BrightnessParams>) return {&p.delta_v};
        if constexpr (std::is_same_v<T, DarkParams>) return {&p.scale};
        if constexpr (std::is_same_v<T, FogParams>) return {&p.thickness, &p.smoothness};
        if constexpr (std::is_same_v<T, SnowParams>) {
          return {&p.mean, &p.stddev, &p.scale, &p.threshold, &p.blur_radius, &p.blur_std, &p.blend};
        }
        return {};
      },
      params);
}

// Integer-valued fields are handled separately so they stay exact.
void set_field(CorruptionParams& params, std::size_t index, const json& value, const std::string& where) {
  if (!value.is_number()) throw InvalidInput(where + ": expected a number");
  const double v = value.get<double>();
  if (auto* m = std::get_if<MotionBlurParams>(&params)) {
    if (index == 0) {
      m->radius = value.get<int>();
    } else {
      m->sigma = v;
    }
    return;
  }
  if (auto* q = std::get_if<ColorQuantParams>(&params)) {
    q->bits = value.get<int>();
    return;
  }
  if (auto* c = std::get_if<CameraCrashParams>(&params)) {
    c->dropped_cameras = value.get<int>();
    return;
  }
  if (auto* f = std::get_if<FrameLostParams>(&params)) {
    f->probability = v;
    return;
  }
  auto slots = field_slots(params);
  *slots.at(index) = v;
}

void apply_entry(CorruptionKind kind, CorruptionParams& params, const json& entry, const std::string& where) {
  const auto& names = field_names(kind);
  if (entry.is_number()) {
    if (names.size() != 1) throw InvalidInput(where + ": scalar given for a multi-parameter kind");
    set_field(params, 0, entry, where);
  } else if (entry.is_array()) {
    if (entry.size() != names.size()) {
      throw InvalidInput(where + ": expected " + std::to_string(names.size()) + " values");
    }
    for (std::size_t i = 0; i < names.size(); ++i) set_field(params, i, entry[i], where);
  } else if (entry.is_object()) {
    for (const auto& [key, value] : entry.items()) {
      const auto it = std::find(names.begin(), names.end(), key);
      if (it == names.end()) throw InvalidInput(where + ": unknown field '" + key + "'");
      set_field(params, static_cast<std::size_t>(it - names.begin()), value, where + "." + key);
    }
  } else {
    throw InvalidInput(where + ": expected number, array or object");
  }
}

void apply_option(CorruptionKind kind, CorruptionParams& params, const std::string& key, const json& value,
                  const std::string& where) {
  if (kind == CorruptionKind::kDark && key == "shot_noise" && value.is_boolean()) {
    std::get<DarkParams>(params).shot_noise = value.get<bool>();
  } else if (kind == CorruptionKind::kDark && key == "full_scale_photons" && value.is_number()) {
    std::get<DarkParams>(params).full_scale_photons = value.get<double>();
  } else if (kind == CorruptionKind::kFrameLost && key == "whole_sample" && value.is_boolean()) {
    std::get<FrameLostParams>(params).whole_sample = value.get<bool>();
  } else {
    throw InvalidInput(where + ": unknown or mistyped option");
  }
}

void validate(const CorruptionSpec& spec) {
  const std::string where =
      std::string(to_string(spec.kind)) + "/" + std::string(to_string(spec.severity));
  auto fail = [&](const char* what) { throw InvalidInput(where + ": " + what); };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BrightnessParams>) {
          if (!(p.delta_v >= 0.0 && p.delta_v <= 1.0)) fail("delta_v must be in [0, 1]");
        } else if constexpr (std::is_same_v<T, DarkParams>) {
          if (!(p.scale > 0.0 && p.scale <= 1.0)) fail("scale must be in (0, 1]");
          if (!(p.full_scale_photons > 0.0)) fail("full_scale_photons must be > 0");
        } else if constexpr (std::is_same_v<T, FogParams>) {
          if (!(p.thickness > 0.0 && p.smoothness > 0.0)) fail("thickness and smoothness must be > 0");
        } else if constexpr (std::is_same_v<T, SnowParams>) {
          if (!(p.stddev > 0.0)) fail("std must be > 0");
          if (!(p.scale >= 1.0)) fail("scale must be >= 1");
          if (!(p.blend >= 0.0 && p.blend <= 1.0)) fail("blend must be in [0, 1]");
          if (!(p.blur_radius >= 1.0 && p.blur_std > 0.0)) fail("blur radius must be >= 1 and blur std > 0");
        } else if constexpr (std::is_same_v<T, MotionBlurParams>) {
          if (p.radius < 1 || !(p.sigma > 0.0)) fail("radius must be >= 1 and sigma > 0");
        } else if constexpr (std::is_same_v<T, ColorQuantParams>) {
          if (p.bits < 1 || p.bits > 8) fail("bits must be in [1, 8]");
        } else if constexpr (std::is_same_v<T, CameraCrashParams>) {
          if (p.dropped_cameras < 0) fail("dropped_cameras must be >= 0");
        } else if constexpr (std::is_same_v<T, FrameLostParams>) {
          if (!(p.probability >= 0.0 && p.probability <= 1.0)) fail("probability must be in [0, 1]");
        }
      },
      spec.params);
}

}  // namespace

ParameterTable::ParameterTable() {
  for (auto kind : kAllKinds) {
    for (auto sev : kAllSeverities) table_[{kind, sev}] = default_params(kind, sev);
  }
}

ParameterTable::ParameterTable(const nlohmann::json& overrides) : ParameterTable() {
  if (!overrides.is_object()) throw InvalidInput("parameter file must be a JSON object");
  for (const auto& [kind_name, body] : overrides.items()) {
    const auto kind = parse_kind(kind_name);
    if (!kind) throw InvalidInput("parameter file: unknown corruption '" + kind_name + "'");
    if (!body.is_object()) throw InvalidInput("parameter file: '" + kind_name + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      const std::string where = kind_name + "." + key;
      if (const auto sev = parse_severity(key)) {
        apply_entry(*kind, table_[{*kind, *sev}], value, where);
      } else {
        for (auto s : kAllSeverities) apply_option(*kind, table_[{*kind, s}], key, value, where);
      }
    }
  }
  for (const auto& [key, params] : table_) validate({key.first, key.second, params});
}

ParameterTable ParameterTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open parameter file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("parameter file " + path + ": " + e.what());
  }
  return ParameterTable(doc);
}

CorruptionSpec ParameterTable::resolve(CorruptionKind kind, Severity severity) const {
  return {kind, severity, table_.at({kind, severity})};
}

CorruptionSpec resolve_spec(CorruptionKind kind, Severity severity) {
  return {kind, severity, default_params(kind, severity)};
}

nlohmann::json params_to_json(const CorruptionParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BrightnessParams>) return json::array({p.delta_v});
        if constexpr (std::is_same_v<T, DarkParams>) {
          json j = json::array({p.scale});
          if (p.shot_noise) j.push_back({{"shot_noise", true}, {"full_scale_photons", p.full_scale_photons}});
          return j;
        }
        if constexpr (std::is_same_v<T, FogParams>) return json::array({p.thickness, p.smoothness});
        if constexpr (std::is_same_v<T, SnowParams>) {
          return json::array({p.mean, p.stddev, p.scale, p.threshold, p.blur_radius, p.blur_std, p.blend});
        }
        if constexpr (std::is_same_v<T, MotionBlurParams>) return json::array({p.radius, p.sigma});
        if constexpr (std::is_same_v<T, ColorQuantParams>) return json::array({p.bits});
        if constexpr (std::is_same_v<T, CameraCrashParams>) return json::array({p.dropped_cameras});
        if constexpr (std::is_same_v<T, FrameLostParams>) {
          json j = json::array({p.probability});
          if (p.whole_sample) j.push_back({{"whole_sample", true}});
          return j;
        }
      },
      params);
}

}  // namespace corruptkit
