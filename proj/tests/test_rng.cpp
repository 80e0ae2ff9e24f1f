#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "corruptkit/rng.hpp"
#include "corruptkit/seed.hpp"

using namespace corruptkit;

namespace {

nlohmann::json vectors() {
  std::ifstream in(std::string(CORRUPTKIT_TEST_DATA) + "/rng_vectors.json");
  return nlohmann::json::parse(in);
}

std::uint64_t u64(const nlohmann::json& j) { return std::stoull(j.get<std::string>()); }

}  // namespace

TEST(SeededRng, SeedZeroMatchesPublishedSplitMix64) {
  SeededRng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
}

TEST(SeededRng, MatchesShippedStreamVectors) {
  for (const auto& s : vectors()["streams"]) {
    SeededRng rng(u64(s["seed"]));
    for (const auto& expected : s["outputs"]) EXPECT_EQ(rng.next_u64(), u64(expected));
    SeededRng again(u64(s["seed"]));
    for (const auto& expected : s["uniform01"]) EXPECT_EQ(again.uniform01(), expected.get<double>());
  }
}

TEST(SeededRng, MatchesShippedSplitVectors) {
  for (const auto& s : vectors()["splits"]) {
    const SeededRng parent(u64(s["seed"]));
    SeededRng child = parent.split(s["label"].get<std::string>());
    EXPECT_EQ(child.key(), u64(s["child_key"]));
    EXPECT_EQ(child.next_u64(), u64(s["first_output"]));
  }
}

TEST(SeededRng, SplitIgnoresParentPosition) {
  SeededRng a(99);
  SeededRng b(99);
  for (int i = 0; i < 17; ++i) b.next_u64();
  EXPECT_EQ(a.split("angle").next_u64(), b.split("angle").next_u64());
  EXPECT_NE(a.split("angle").key(), a.split("plasma").key());
}

TEST(SeededRng, ChildStreamsAreUncorrelated) {
  SeededRng a = SeededRng(5).split("left");
  SeededRng b = SeededRng(5).split("right");
  const int n = 20000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform01(), y = b.uniform01();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  EXPECT_LT(std::fabs(corr), 4.0 / std::sqrt(n));
}

TEST(SeededRng, UniformIndexStaysInBoundAndCoversIt) {
  SeededRng rng(3);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto k = rng.uniform_index(7);
    ASSERT_LT(k, 7u);
    ++hits[k];
  }
  for (int h : hits) EXPECT_GT(h, 850);
}

TEST(SeededRng, NormalMoments) {
  SeededRng rng(11);
  const int n = 50000;
  double s = 0, ss = 0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal(0.2, 0.3);
    s += v;
    ss += v * v;
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 0.2, 4 * 0.3 / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(ss / n - mean * mean), 0.3, 0.01);
}

TEST(SeededRng, PoissonMean) {
  SeededRng rng(12);
  for (double lambda : {0.5, 8.0, 200.0}) {
    double s = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) s += static_cast<double>(rng.poisson(lambda));
    EXPECT_NEAR(s / n, lambda, 5 * std::sqrt(lambda / n)) << lambda;
  }
}

TEST(DeriveSeed, MatchesShippedVectors) {
  for (const auto& v : vectors()["derive_seed"]) {
    const auto kind = parse_kind(v["kind"].get<std::string>());
    const auto sev = parse_severity(v["severity"].get<std::string>());
    ASSERT_TRUE(kind && sev);
    EXPECT_EQ(derive_seed(u64(v["global"]), v["scene"].get<std::string>(), u64(v["sample"]),
                          v["camera"].get<std::string>(), *kind, *sev),
              u64(v["seed"]));
  }
}

TEST(DeriveSeed, IdenticalTuplesAgree) {
  EXPECT_EQ(derive_seed(1, "s", 2, "c", CorruptionKind::kFog, Severity::kEasy),
            derive_seed(1, "s", 2, "c", CorruptionKind::kFog, Severity::kEasy));
}

TEST(DeriveSeed, SeverityChangesSeed) {
  EXPECT_NE(derive_seed(1, "s", 2, "c", CorruptionKind::kFog, Severity::kEasy),
            derive_seed(1, "s", 2, "c", CorruptionKind::kFog, Severity::kHard));
}

TEST(DeriveSeed, LengthPrefixSeparatesFields) {
  EXPECT_NE(derive_seed(1, "ab", 0, "c", CorruptionKind::kFog, Severity::kEasy),
            derive_seed(1, "a", 0, "bc", CorruptionKind::kFog, Severity::kEasy));
}

TEST(DeriveSeed, NoCollisionsOverTenThousandTuples) {
  std::set<std::uint64_t> seen;
  int n = 0;
  for (int scene = 0; scene < 10; ++scene) {
    for (std::uint64_t sample = 0; sample < 40; ++sample) {
      for (const char* cam : {"CAM_FRONT", "CAM_BACK", "CAM_FRONT_LEFT", "CAM_FRONT_RIGHT", "CAM_BACK_LEFT"}) {
        for (auto kind : {CorruptionKind::kFog, CorruptionKind::kSnow, CorruptionKind::kMotionBlur,
                          CorruptionKind::kBrightness, CorruptionKind::kDark}) {
          seen.insert(derive_seed(2023, "scene-" + std::to_string(scene), sample, cam, kind, Severity::kModerate));
          ++n;
        }
      }
    }
  }
  EXPECT_EQ(n, 10000);
  EXPECT_EQ(seen.size(), 10000u);
}
