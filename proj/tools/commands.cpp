#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corruptkit/analysis.hpp"
#include "corruptkit/error.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/lidar.hpp"
#include "corruptkit/manifest.hpp"
#include "corruptkit/metrics.hpp"
#include "corruptkit/parallel.hpp"
#include "corruptkit/pipeline.hpp"
#include "corruptkit/severity.hpp"

namespace corruptkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Raised for problems the user must fix on the command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  int verbosity = 0;
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw IoError("cannot write " + path);
  f << text;
}

struct CorruptOptions {
  std::string manifest;
  std::string out;
  std::string corruption;
  std::string severity;
  bool all_severities = false;
  std::uint64_t seed = 2023;
  int jobs = 0;
  std::string params_file;
};

int cmd_corrupt(const CorruptOptions& opt, Context& ctx) {
  const auto kind = parse_kind(opt.corruption);
  if (!kind) throw UsageError("unknown corruption '" + opt.corruption + "'");
  std::vector<Severity> severities;
  if (opt.all_severities) {
    if (!opt.severity.empty()) throw UsageError("--severity and --all-severities are exclusive");
    severities.assign(kAllSeverities.begin(), kAllSeverities.end());
  } else {
    const auto sev = parse_severity(opt.severity);
    if (!sev) throw UsageError("unknown or missing severity '" + opt.severity + "' (easy, moderate, hard)");
    severities.push_back(*sev);
  }
  const ParameterTable table = opt.params_file.empty() ? ParameterTable() : ParameterTable::from_file(opt.params_file);
  const Manifest manifest = load_manifest(opt.manifest);
  const int jobs = opt.jobs > 0 ? opt.jobs : default_worker_count();

  int status = kExitOk;
  for (auto sev : severities) {
    CorruptionJob job{manifest, table.resolve(*kind, sev), opt.seed, opt.out, jobs};
    const GenerationReport report = run_pipeline(job);
    const fs::path report_path = report.tree_root / "report.json";
    write_text(report_path.string(), report.to_json().dump(2) + "\n", ctx.out);
    ctx.out << report_path.generic_string() << '\n';
    if (ctx.verbosity > 0) {
      ctx.err << to_string(*kind) << '/' << to_string(sev) << ": " << report.files.size() << " files, digest "
              << report.digest << ", " << report.wall_ms << " ms\n";
    }
    if (!report.complete) {
      for (const auto& e : report.errors) ctx.err << "error: " << e << '\n';
      ctx.err << "error: " << to_string(*kind) << '/' << to_string(sev) << " is incomplete ("
              << report.errors.size() << " failures); see " << report_path.generic_string() << '\n';
      status = kExitFailure;
    }
  }
  return status;
}

struct MetricsOptions {
  std::string results;
  std::string baseline{kDefaultBaseline};
  std::string format = "markdown";
  std::string table = "ce";
  std::string out;
};

int cmd_metrics(const MetricsOptions& opt, Context& ctx) {
  const auto format = parse_report_format(opt.format);
  if (!format) throw UsageError("unknown format '" + opt.format + "' (csv, markdown)");
  const auto table = parse_report_table(opt.table);
  if (!table) throw UsageError("unknown table '" + opt.table + "' (ce, rr)");
  const BenchmarkResults results = load_results(opt.results);
  if (!results.models.contains(opt.baseline)) {
    std::string names;
    for (const auto& n : results.model_order) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("baseline '" + opt.baseline + "' not found; available models: " + names);
  }
  const RobustnessReport report = aggregate(results, opt.baseline);
  write_text(opt.out, render_report(report, *format, *table), ctx.out);
  return kExitOk;
}

struct LidarOptions {
  std::string in;
  std::string out;
  double half_angle = 45.0;
  double yaw_offset = 0.0;
  int layout = 4;
};

int cmd_lidar(const LidarOptions& opt, Context& ctx) {
  if (opt.layout != 4 && opt.layout != 5) throw UsageError("--layout must be 4 or 5");
  if (!(opt.half_angle > 0.0 && opt.half_angle <= 180.0)) throw UsageError("--half-angle must be in (0, 180]");
  const PointCloud pc = load_points(opt.in, static_cast<PointLayout>(opt.layout));
  const PointCloud kept = fov_crop(pc, opt.half_angle, opt.yaw_offset);
  save_points(kept, opt.out);
  if (ctx.verbosity > 0) ctx.err << "kept " << kept.size() << " of " << pc.size() << " points\n";
  return kExitOk;
}

int cmd_blackout(const std::string& in, const std::string& out) {
  save_image(out, blackout_camera(load_image(in)));
  return kExitOk;
}

std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [&](const fs::path& a, const fs::path& b) {
              return a.lexically_relative(dir).generic_string() < b.lexically_relative(dir).generic_string();
            });
  return files;
}

struct HistogramOptions {
  std::vector<std::string> dirs;
  int bins = 256;
  std::size_t sample = 300;
  std::uint64_t seed = 2023;
  std::string out;
};

int cmd_histogram(const HistogramOptions& opt, Context& ctx) {
  std::vector<Histogram> hists;
  json inputs = json::array();
  for (const auto& dir : opt.dirs) {
    const auto files = list_images(dir);
    if (files.empty()) throw UsageError("no PNG/JPEG images under " + dir);
    Histogram h(opt.bins);
    const auto picked = sample_indices(files.size(), opt.sample, opt.seed);
    for (auto i : picked) h.add(load_image(files[i]));
    inputs.push_back({{"dir", dir}, {"images", picked.size()}, {"histogram", histogram_to_json(h)}});
    hists.push_back(std::move(h));
  }
  json distances = json::array();
  for (std::size_t i = 0; i < hists.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < hists.size(); ++j) row.push_back(histogram_distance(hists[i], hists[j]));
    distances.push_back(std::move(row));
    inputs[i]["distance_to_first"] = histogram_distance(hists[i], hists[0]);
  }
  const json doc = {{"bins", opt.bins}, {"sample", opt.sample}, {"seed", opt.seed},
                    {"inputs", std::move(inputs)}, {"distances", std::move(distances)}};
  write_text(opt.out, doc.dump(2) + "\n", ctx.out);
  return kExitOk;
}

int cmd_features(const std::string& a_path, const std::string& b_path, const std::string& out, Context& ctx) {
  const FeatureMap a = load_tensor(a_path);
  const FeatureMap b = load_tensor(b_path);
  const json doc = {{"shape", {a.channels(), a.height(), a.width()}},
                    {"mse", feature_mse(a, b)},
                    {"gram_relative_error", gram_relative_error(a, b)}};
  write_text(out, doc.dump(2) + "\n", ctx.out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Corruption synthesis and robustness evaluation for multi-camera driving benchmarks"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", ctx.verbosity, "Print per-step summaries to stderr");

  CorruptOptions corrupt;
  auto* sub_corrupt = app.add_subcommand("corrupt", "Generate a corrupted copy of a dataset manifest");
  sub_corrupt->add_option("--manifest", corrupt.manifest, "Input manifest JSON")->required();
  sub_corrupt->add_option("--out", corrupt.out, "Output root directory")->required();
  sub_corrupt->add_option("--corruption", corrupt.corruption,
                          "brightness, dark, fog, snow, motion_blur, color_quant, camera_crash, frame_lost")
      ->required();
  auto* sev_opt = sub_corrupt->add_option("--severity", corrupt.severity, "easy, moderate or hard");
  auto* all_opt = sub_corrupt->add_flag("--all-severities", corrupt.all_severities, "Generate all three levels");
  sev_opt->excludes(all_opt);
  sub_corrupt->add_option("--seed", corrupt.seed, "Global seed")->capture_default_str();
  sub_corrupt->add_option("--jobs", corrupt.jobs, "Worker threads (default: $CORRUPTKIT_JOBS or core count)");
  sub_corrupt->add_option("--params-file", corrupt.params_file, "JSON parameter overrides");

  MetricsOptions metrics;
  auto* sub_metrics = app.add_subcommand("metrics", "Compute CE/mCE and RR/mRR from a results table");
  sub_metrics->add_option("--results", metrics.results, "Results JSON")->required();
  sub_metrics->add_option("--baseline", metrics.baseline, "Baseline model")->capture_default_str();
  sub_metrics->add_option("--format", metrics.format, "csv or markdown")->capture_default_str();
  sub_metrics->add_option("--table", metrics.table, "Per-corruption columns: ce or rr")->capture_default_str();
  sub_metrics->add_option("--out", metrics.out, "Output path (default: stdout)");

  LidarOptions lidar;
  auto* sub_lidar = app.add_subcommand("lidar", "Keep only the frontal field of view of a point cloud");
  sub_lidar->add_option("--in", lidar.in, "Input point file")->required();
  sub_lidar->add_option("--out", lidar.out, "Output point file")->required();
  sub_lidar->add_option("--half-angle", lidar.half_angle, "Half-angle in degrees")->capture_default_str();
  sub_lidar->add_option("--yaw-offset", lidar.yaw_offset, "Window center azimuth in degrees")->capture_default_str();
  sub_lidar->add_option("--layout", lidar.layout, "Floats per point: 4 or 5")->capture_default_str();

  std::string blackout_in, blackout_out;
  auto* sub_blackout = app.add_subcommand("blackout", "Write an all-zero copy of an image");
  sub_blackout->add_option("--in", blackout_in, "Input image")->required();
  sub_blackout->add_option("--out", blackout_out, "Output image")->required();

  HistogramOptions hist;
  auto* sub_hist = app.add_subcommand("histogram", "Joint RGB pixel histograms and L1 distances");
  sub_hist->add_option("--dir", hist.dirs, "Image directory (repeatable)")->required();
  sub_hist->add_option("--bins", hist.bins, "Bin count (divides 256)")->capture_default_str();
  sub_hist->add_option("--sample", hist.sample, "Images sampled per directory")->capture_default_str();
  sub_hist->add_option("--seed", hist.seed, "Sampling seed")->capture_default_str();
  sub_hist->add_option("--out", hist.out, "Output JSON (default: stdout)");

  std::string feat_a, feat_b, feat_out;
  auto* sub_feat = app.add_subcommand("features", "Feature-map MSE and Gram relative error");
  sub_feat->add_option("--a", feat_a, "Corrupted feature tensor")->required();
  sub_feat->add_option("--b", feat_b, "Reference feature tensor")->required();
  sub_feat->add_option("--out", feat_out, "Output JSON (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*sub_corrupt) return cmd_corrupt(corrupt, ctx);
    if (*sub_metrics) return cmd_metrics(metrics, ctx);
    if (*sub_lidar) return cmd_lidar(lidar, ctx);
    if (*sub_blackout) return cmd_blackout(blackout_in, blackout_out);
    if (*sub_hist) return cmd_histogram(hist, ctx);
    if (*sub_feat) return cmd_features(feat_a, feat_b, feat_out, ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace corruptkit::cli
