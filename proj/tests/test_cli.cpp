#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "corruptkit/analysis.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/lidar.hpp"
#include "corruptkit/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace corruptkit;
using corruptkit::testing::TempDir;
using corruptkit::testing::write_fixture_dataset;

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "corruptkit");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = CORRUPTKIT_TEST_DATA;

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"corrupt", "--manifest", "m.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"corrupt", "--manifest", "m.json", "--out", "o", "--corruption", "rain", "--severity", "easy"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"corrupt", "--manifest", "m.json", "--out", "o", "--corruption", "fog", "--severity", "extreme"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"metrics", "--results", kData + "/toy_results.json", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, MissingInputExitsOne) {
  const auto r = run_cli({"corrupt", "--manifest", "/nonexistent/m.json", "--out", "/tmp/x", "--corruption", "fog",
                          "--severity", "easy"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("/nonexistent/m.json"), std::string::npos);
}

TEST(Cli, ColorQuantHardOnSingleImage) {
  TempDir dir;
  const auto m = write_fixture_dataset(dir.path() / "in", 1, 1);
  Manifest one = m;
  one.cameras = {"CAM_FRONT"};
  one.scenes[0].samples[0].images = {{"CAM_FRONT", m.scenes[0].samples[0].images.at("CAM_FRONT")}};
  save_manifest(one, dir.path() / "in" / "one.json");
  const auto r = run_cli({"corrupt", "--manifest", (dir.path() / "in" / "one.json").string(), "--out",
                          (dir.path() / "out").string(), "--corruption", "color_quant", "--severity", "hard"});
  ASSERT_EQ(r.code, 0) << r.err;
  const fs::path tree = dir.path() / "out" / "color_quant" / "hard";
  EXPECT_EQ(r.out, (tree / "report.json").generic_string() + "\n");
  const auto img = load_image(tree / output_relpath(one.scenes[0].samples[0].images.at("CAM_FRONT")));
  std::set<int> values(img.data().begin(), img.data().end());
  EXPECT_LE(values.size(), 8u);
  const auto report = nlohmann::json::parse(slurp(tree / "report.json"));
  EXPECT_EQ(report.at("files").size(), 1u);
  EXPECT_TRUE(report.at("complete").get<bool>());
}

TEST(Cli, AllSeveritiesAndParamsFile) {
  TempDir dir;
  write_fixture_dataset(dir.path() / "in", 1, 1, 16, 9);
  std::ofstream(dir.path() / "params.json") << R"({"dark": {"hard": 0.1}})";
  const auto r = run_cli({"corrupt", "--manifest", (dir.path() / "in" / "manifest.json").string(), "--out",
                          (dir.path() / "out").string(), "--corruption", "dark", "--all-severities", "--jobs", "2",
                          "--params-file", (dir.path() / "params.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* sev : {"easy", "moderate", "hard"}) {
    EXPECT_TRUE(fs::exists(dir.path() / "out" / "dark" / sev / "manifest.json")) << sev;
  }
  const auto hard = nlohmann::json::parse(slurp(dir.path() / "out" / "dark" / "hard" / "report.json"));
  EXPECT_EQ(hard.at("params"), nlohmann::json::parse("[0.1]"));
  std::ofstream(dir.path() / "bad.json") << R"({"dark": {"hard": 7}})";
  EXPECT_EQ(run_cli({"corrupt", "--manifest", (dir.path() / "in" / "manifest.json").string(), "--out",
                     (dir.path() / "out2").string(), "--corruption", "dark", "--severity", "easy", "--params-file",
                     (dir.path() / "bad.json").string()})
                .code,
            cli::kExitFailure);
}

TEST(Cli, MetricsGoldenAndMissingBaseline) {
  const auto r = run_cli({"metrics", "--results", kData + "/toy_results.json", "--baseline", "A", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(kData + "/toy_report_ce.csv"));
  const auto missing = run_cli({"metrics", "--results", kData + "/toy_results.json"});
  EXPECT_EQ(missing.code, cli::kExitUsage);
  EXPECT_NE(missing.err.find("A, B"), std::string::npos) << missing.err;
}

TEST(Cli, LidarFullCircleIsByteIdentical) {
  TempDir dir;
  SeededRng rng(3);
  PointCloud pc;
  for (int i = 0; i < 500; ++i) {
    pc.push_back(static_cast<float>(rng.uniform(-20, 20)), static_cast<float>(rng.uniform(-20, 20)), 0.5f, 10.0f);
  }
  save_points(pc, dir.path() / "in.bin");
  ASSERT_EQ(run_cli({"lidar", "--in", (dir.path() / "in.bin").string(), "--out", (dir.path() / "out.bin").string(),
                     "--half-angle", "180"})
                .code,
            0);
  EXPECT_EQ(read_file(dir.path() / "in.bin"), read_file(dir.path() / "out.bin"));
  ASSERT_EQ(run_cli({"lidar", "--in", (dir.path() / "in.bin").string(), "--out", (dir.path() / "crop.bin").string()})
                .code,
            0);
  EXPECT_EQ(load_points(dir.path() / "crop.bin", PointLayout::kXyzi), fov_crop(pc));
  EXPECT_EQ(run_cli({"lidar", "--in", (dir.path() / "in.bin").string(), "--out", "x.bin", "--layout", "3"}).code,
            cli::kExitUsage);
}

TEST(Cli, HistogramIdenticalDirsHaveZeroDistance) {
  TempDir dir;
  write_fixture_dataset(dir.path() / "a", 1, 2, 16, 9);
  fs::copy(dir.path() / "a", dir.path() / "b", fs::copy_options::recursive);
  const auto r = run_cli({"histogram", "--dir", (dir.path() / "a").string(), "--dir", (dir.path() / "b").string(),
                          "--bins", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(doc.at("distances")[0][1].get<double>(), 0.0);
  EXPECT_EQ(doc.at("inputs")[1].at("images"), 12);
}

TEST(Cli, BlackoutAndFeatures) {
  TempDir dir;
  save_image(dir.path() / "cam.png", corruptkit::testing::random_image(9, 5, 1));
  ASSERT_EQ(run_cli({"blackout", "--in", (dir.path() / "cam.png").string(), "--out", (dir.path() / "z.png").string()}).code, 0);
  const auto zero = load_image(dir.path() / "z.png");
  for (auto v : zero.data()) ASSERT_EQ(v, 0);

  FeatureMap f(2, 2, 2, std::vector<float>{1, 2, 3, 4, 5, 6, 7, 8});
  FeatureMap g = f;
  for (float& v : g.values()) v *= 2.0f;
  save_tensor(f, dir.path() / "f.ckfm");
  save_tensor(g, dir.path() / "g.ckfm");
  const auto r = run_cli({"features", "--a", (dir.path() / "g.ckfm").string(), "--b", (dir.path() / "f.ckfm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc.at("gram_relative_error").get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(doc.at("mse").get<double>(), 204.0 / 8.0, 1e-12);
}

TEST(CliBinary, ExitCodesFromProcess) {
  const std::string bin = CORRUPTKIT_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(bin + " --help"), 0);
  EXPECT_EQ(status(bin + " corrupt"), 2);
  EXPECT_EQ(status(bin + " metrics --results /nonexistent.json"), 1);
  EXPECT_EQ(status(bin + " metrics --results " + kData + "/toy_results.json --baseline A"), 0);
}
