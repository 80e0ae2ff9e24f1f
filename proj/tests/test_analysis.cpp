#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "corruptkit/analysis.hpp"
#include "corruptkit/error.hpp"
#include "support/fixtures.hpp"

using namespace corruptkit;
using corruptkit::testing::constant_image;
using corruptkit::testing::random_image;
using corruptkit::testing::TempDir;

namespace {

FeatureMap random_map(int c, int h, int w, std::uint64_t seed) {
  SeededRng rng(seed);
  FeatureMap f(c, h, w);
  // Dyadic values with few mantissa bits, so small scalings stay exact in float.
  for (float& v : f.values()) v = static_cast<float>(std::round(rng.normal(0.0, 1.0) * 256.0) / 256.0);
  return f;
}

// Dense reference implementations over explicit indices.
double oracle_mse(const FeatureMap& a, const FeatureMap& b) {
  double s = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    for (int y = 0; y < a.height(); ++y) {
      for (int x = 0; x < a.width(); ++x) {
        const double d = static_cast<double>(a.at(c, y, x)) - b.at(c, y, x);
        s += d * d;
      }
    }
  }
  return s / (a.channels() * a.height() * a.width());
}

std::vector<double> oracle_gram(const FeatureMap& f) {
  const int n = f.channels();
  std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) g[i * n + j] += static_cast<double>(f.at(i, y, x)) * f.at(j, y, x);
      }
    }
  }
  return g;
}

double oracle_gram_error(const FeatureMap& a, const FeatureMap& b) {
  const auto ga = oracle_gram(a);
  const auto gb = oracle_gram(b);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    num += (ga[i] - gb[i]) * (ga[i] - gb[i]);
    den += gb[i] * gb[i];
  }
  return std::sqrt(num) / std::sqrt(den);
}

}  // namespace

TEST(Histogram, CountsEveryChannel) {
  const std::vector<ImageBuffer> imgs = {constant_image(4, 4, 10), constant_image(2, 2, 255)};
  const auto h = pixel_histogram(imgs);
  EXPECT_EQ(h.total, 4u * 4 * 3 + 2 * 2 * 3);
  EXPECT_EQ(h.counts[10], 48u);
  EXPECT_EQ(h.counts[255], 12u);
  const auto coarse = pixel_histogram(imgs, 16);
  EXPECT_EQ(coarse.counts[0], 48u);
  EXPECT_EQ(coarse.counts[15], 12u);
  EXPECT_THROW(Histogram(3), InvalidInput);
  EXPECT_THROW(pixel_histogram(std::vector<ImageBuffer>{}), InvalidInput);
}

TEST(Histogram, DistanceProperties) {
  std::vector<Histogram> hs;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const std::vector<ImageBuffer> one = {s < 3 ? random_image(16, 16, s) : constant_image(8, 8, static_cast<std::uint8_t>(s * 40))};
    hs.push_back(pixel_histogram(one));
  }
  for (const auto& a : hs) {
    EXPECT_DOUBLE_EQ(histogram_distance(a, a), 0.0);
    for (const auto& b : hs) {
      const double d = histogram_distance(a, b);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 2.0 + 1e-12);
      EXPECT_DOUBLE_EQ(d, histogram_distance(b, a));
      for (const auto& c : hs) EXPECT_LE(d, histogram_distance(a, c) + histogram_distance(c, b) + 1e-12);
    }
  }
  EXPECT_DOUBLE_EQ(histogram_distance(hs[3], hs[4]), 2.0);
  EXPECT_THROW(histogram_distance(Histogram(256), hs[0]), InvalidInput);
}

TEST(Histogram, JsonHasCounts) {
  const std::vector<ImageBuffer> one = {constant_image(2, 2, 7)};
  const auto j = histogram_to_json(pixel_histogram(one, 8));
  EXPECT_EQ(j.at("bins"), 8);
  EXPECT_EQ(j.at("counts").size(), 8u);
  EXPECT_EQ(j.at("total"), 12);
}

TEST(SampleIndices, DistinctSortedSeeded) {
  const auto a = sample_indices(1000, 300, 2023);
  EXPECT_EQ(a.size(), 300u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
  EXPECT_EQ(a, sample_indices(1000, 300, 2023));
  EXPECT_NE(a, sample_indices(1000, 300, 2024));
  EXPECT_EQ(sample_indices(5, 300, 1), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Features, MseMatchesOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_map(3, 4, 4, s);
    const auto b = random_map(3, 4, 4, s + 100);
    EXPECT_NEAR(feature_mse(a, b), oracle_mse(a, b), 1e-10);
  }
  EXPECT_DOUBLE_EQ(feature_mse(random_map(2, 3, 3, 1), random_map(2, 3, 3, 1)), 0.0);
  EXPECT_THROW(feature_mse(random_map(3, 4, 4, 1), random_map(3, 4, 5, 1)), InvalidInput);
  EXPECT_THROW(feature_mse(FeatureMap(), FeatureMap()), InvalidInput);
}

TEST(Features, GramMatchesOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_map(3, 4, 4, s);
    const auto b = random_map(3, 4, 4, s + 100);
    const auto g = gram_matrix(a);
    const auto ref = oracle_gram(a);
    ASSERT_EQ(g.size(), 9u);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], ref[i], 1e-10);
    EXPECT_NEAR(gram_relative_error(a, b), oracle_gram_error(a, b), 1e-10);
  }
}

TEST(Features, ScaledMapGivesSquaredFactor) {
  const auto f = random_map(3, 4, 4, 7);
  for (float c : {0.5f, 2.0f, -3.0f, 1.0f}) {
    FeatureMap scaled = f;
    for (float& v : scaled.values()) v *= c;
    EXPECT_NEAR(gram_relative_error(scaled, f), std::abs(static_cast<double>(c) * c - 1.0), 1e-10);
  }
  EXPECT_THROW(gram_relative_error(f, FeatureMap(3, 4, 4)), InvalidInput);
}

TEST(Features, GramInvariantToSpatialPermutation) {
  const auto f = random_map(4, 3, 5, 9);
  FeatureMap shuffled(4, 3, 5);
  std::vector<std::size_t> order(15);
  SeededRng rng(5);
  for (std::size_t i = 0; i < 15; ++i) order[i] = i;
  for (std::size_t i = 14; i > 0; --i) std::swap(order[i], order[rng.uniform_index(i + 1)]);
  for (int c = 0; c < 4; ++c) {
    for (std::size_t p = 0; p < 15; ++p) shuffled.values()[c * 15 + p] = f.values()[c * 15 + order[p]];
  }
  EXPECT_NEAR(gram_relative_error(shuffled, f), 0.0, 1e-6);
}

TEST(Tensor, RoundTripAndErrors) {
  TempDir dir;
  const auto f = random_map(2, 3, 4, 11);
  const auto bytes = encode_tensor(f);
  EXPECT_EQ(bytes.size(), 16u + 24 * 4);
  EXPECT_EQ(decode_tensor(bytes), f);
  save_tensor(f, dir.path() / "f.ckfm");
  EXPECT_EQ(load_tensor(dir.path() / "f.ckfm"), f);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_tensor(bad), InvalidInput);
  auto short_ = bytes;
  short_.pop_back();
  EXPECT_THROW(decode_tensor(short_), InvalidInput);
}
