#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "corruptkit/error.hpp"
#include "corruptkit/severity.hpp"

using namespace corruptkit;

TEST(Severity, NamesRoundTrip) {
  for (auto s : kAllSeverities) EXPECT_EQ(parse_severity(to_string(s)), s);
  for (auto k : kAllKinds) EXPECT_EQ(parse_kind(to_string(k)), k);
  EXPECT_FALSE(parse_severity("extreme"));
  EXPECT_FALSE(parse_kind("rain"));
  EXPECT_EQ(kAllSeverities.size(), 3u);
}

TEST(Severity, PresetSpotChecks) {
  EXPECT_EQ(std::get<BrightnessParams>(resolve_spec(CorruptionKind::kBrightness, Severity::kEasy).params).delta_v, 0.2);
  EXPECT_EQ(std::get<DarkParams>(resolve_spec(CorruptionKind::kDark, Severity::kHard).params).scale, 0.3);
  EXPECT_EQ(std::get<FogParams>(resolve_spec(CorruptionKind::kFog, Severity::kEasy).params), (FogParams{2.0, 2.0}));
  EXPECT_EQ(std::get<SnowParams>(resolve_spec(CorruptionKind::kSnow, Severity::kEasy).params),
            (SnowParams{0.1, 0.3, 3.0, 0.5, 10.0, 4.0, 0.8}));
  EXPECT_EQ(std::get<MotionBlurParams>(resolve_spec(CorruptionKind::kMotionBlur, Severity::kHard).params),
            (MotionBlurParams{20, 15.0}));
  EXPECT_EQ(std::get<ColorQuantParams>(resolve_spec(CorruptionKind::kColorQuant, Severity::kModerate).params).bits, 4);
  EXPECT_EQ(std::get<CameraCrashParams>(resolve_spec(CorruptionKind::kCameraCrash, Severity::kHard).params)
                .dropped_cameras,
            5);
  EXPECT_EQ(std::get<FrameLostParams>(resolve_spec(CorruptionKind::kFrameLost, Severity::kModerate).params)
                .probability,
            4.0 / 6.0);
}

TEST(ParameterTable, DefaultsMatchPresets) {
  const ParameterTable table;
  for (auto k : kAllKinds) {
    for (auto s : kAllSeverities) EXPECT_EQ(table.resolve(k, s), resolve_spec(k, s));
  }
}

TEST(ParameterTable, OverridesBySeverityAndOption) {
  const auto doc = nlohmann::json::parse(R"({
    "fog": {"hard": [3.5, 1.2], "easy": {"smoothness": 2.5}},
    "dark": {"shot_noise": true, "moderate": 0.45},
    "motion_blur": {"easy": {"radius": 9}},
    "frame_lost": {"whole_sample": true}
  })");
  const ParameterTable table(doc);
  EXPECT_EQ(std::get<FogParams>(table.resolve(CorruptionKind::kFog, Severity::kHard).params), (FogParams{3.5, 1.2}));
  EXPECT_EQ(std::get<FogParams>(table.resolve(CorruptionKind::kFog, Severity::kEasy).params), (FogParams{2.0, 2.5}));
  const auto dark = std::get<DarkParams>(table.resolve(CorruptionKind::kDark, Severity::kModerate).params);
  EXPECT_EQ(dark.scale, 0.45);
  EXPECT_TRUE(dark.shot_noise);
  EXPECT_TRUE(std::get<DarkParams>(table.resolve(CorruptionKind::kDark, Severity::kEasy).params).shot_noise);
  EXPECT_EQ(std::get<MotionBlurParams>(table.resolve(CorruptionKind::kMotionBlur, Severity::kEasy).params),
            (MotionBlurParams{9, 5.0}));
  EXPECT_TRUE(std::get<FrameLostParams>(table.resolve(CorruptionKind::kFrameLost, Severity::kHard).params).whole_sample);
  // Untouched entries keep their presets.
  EXPECT_EQ(table.resolve(CorruptionKind::kSnow, Severity::kHard), resolve_spec(CorruptionKind::kSnow, Severity::kHard));
}

TEST(ParameterTable, RejectsMalformedOverrides) {
  auto bad = [](const char* text) { return ParameterTable(nlohmann::json::parse(text)); };
  EXPECT_THROW(bad(R"({"rain": {}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"fog": {"easy": [1.0]}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"fog": {"easy": 1.0}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"fog": {"easy": {"depth": 1.0}}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"color_quant": {"hard": 0}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"brightness": {"easy": 1.5}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"dark": {"sparkle": true}})"), InvalidInput);
  EXPECT_THROW(bad(R"([1, 2])"), InvalidInput);
}

TEST(ParameterTable, ParamsToJsonUsesTupleOrder) {
  EXPECT_EQ(params_to_json(resolve_spec(CorruptionKind::kSnow, Severity::kHard).params),
            nlohmann::json::parse("[0.55, 0.3, 4.0, 0.9, 12.0, 8.0, 0.7]"));
  EXPECT_EQ(params_to_json(resolve_spec(CorruptionKind::kMotionBlur, Severity::kEasy).params),
            nlohmann::json::parse("[15, 5.0]"));
}
