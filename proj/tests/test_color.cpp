#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "corruptkit/color.hpp"

using namespace corruptkit;

TEST(RgbToHsv, PureRed) {
  const auto hsv = rgb_to_hsv({255, 0, 0});
  EXPECT_DOUBLE_EQ(hsv.h, 0.0);
  EXPECT_DOUBLE_EQ(hsv.s, 1.0);
  EXPECT_DOUBLE_EQ(hsv.v, 1.0);
}

TEST(RgbToHsv, GrayHasNoSaturation) {
  const auto hsv = rgb_to_hsv({128, 128, 128});
  EXPECT_DOUBLE_EQ(hsv.h, 0.0);
  EXPECT_DOUBLE_EQ(hsv.s, 0.0);
  EXPECT_NEAR(hsv.v, 0.502, 5e-4);
}

TEST(RgbToHsv, MatchesReferenceHexcone) {
  // Python colorsys.rgb_to_hsv(12/255, 200/255, 77/255) scaled to degrees.
  const auto hsv = rgb_to_hsv({12, 200, 77});
  EXPECT_NEAR(hsv.h, 140.74468085106383, 1e-9);
  EXPECT_NEAR(hsv.s, 0.94, 1e-12);
  EXPECT_NEAR(hsv.v, 200.0 / 255.0, 1e-12);
}

TEST(RgbToHsv, HueStaysInRange) {
  for (int r = 0; r < 256; r += 15) {
    for (int g = 0; g < 256; g += 15) {
      for (int b = 0; b < 256; b += 15) {
        const auto hsv = rgb_to_hsv({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                     static_cast<std::uint8_t>(b)});
        ASSERT_GE(hsv.h, 0.0);
        ASSERT_LT(hsv.h, 360.0);
        ASSERT_GE(hsv.s, 0.0);
        ASSERT_LE(hsv.s, 1.0);
      }
    }
  }
}

TEST(HsvToRgb, Black) { EXPECT_EQ(hsv_to_rgb({0, 0, 0}), (Rgb{0, 0, 0})); }

TEST(HsvToRgb, ValueOnly) { EXPECT_EQ(hsv_to_rgb({0, 0, 0.2}), (Rgb{51, 51, 51})); }

TEST(HsvToRgb, RoundTripWithinOneEverywhere) {
  // Exhaustive over a 4-step lattice plus the channel extremes.
  for (int r = 0; r < 256; r += 4) {
    for (int g = 0; g < 256; g += 4) {
      for (int b : {0, 1, 63, 127, 128, 200, 254, 255}) {
        const Rgb in{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
        const Rgb out = hsv_to_rgb(rgb_to_hsv(in));
        ASSERT_LE(std::abs(in.r - out.r), 1);
        ASSERT_LE(std::abs(in.g - out.g), 1);
        ASSERT_LE(std::abs(in.b - out.b), 1);
      }
    }
  }
}
