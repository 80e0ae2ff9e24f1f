#include "corruptkit/pipeline.hpp"

#include <chrono>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "corruptkit/corruptions.hpp"
#include "corruptkit/digest.hpp"
#include "corruptkit/error.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/parallel.hpp"
#include "corruptkit/rig.hpp"
#include "corruptkit/seed.hpp"

namespace corruptkit {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path tree_root(const fs::path& output_root, const CorruptionSpec& spec) {
  return output_root / std::string(to_string(spec.kind)) / std::string(to_string(spec.severity));
}

std::string output_relpath(const std::string& input_path) {
  fs::path p = fs::path(input_path).lexically_normal().relative_path();
  for (const auto& part : p) {
    if (part == "..") throw InvalidInput("image path escapes the dataset root: " + input_path);
  }
  if (p.empty() || !p.has_filename()) throw InvalidInput("image path has no file name: " + input_path);
  p.replace_extension(".png");
  return p.generic_string();
}

Manifest rewrite_manifest(const Manifest& input, const fs::path& root) {
  Manifest out = input;
  out.base_dir = root;
  const fs::path abs_root = fs::absolute(root).lexically_normal();
  for (auto& scene : out.scenes) {
    for (auto& sample : scene.samples) {
      for (auto& [cam, path] : sample.images) path = output_relpath(path);
      if (sample.lidar_path) {
        const fs::path src = fs::absolute(input.resolve(*sample.lidar_path)).lexically_normal();
        sample.lidar_path = src.lexically_relative(abs_root).generic_string();
      }
    }
  }
  return out;
}

std::string content_digest(const std::vector<FileRecord>& files) {
  Sha256 h;
  std::vector<std::uint8_t> raw(32);
  for (const auto& f : files) {
    h.update(f.path);
    const std::uint8_t nul = 0;
    h.update(std::span<const std::uint8_t>(&nul, 1));
    for (std::size_t i = 0; i < 32; ++i) {
      raw[i] = static_cast<std::uint8_t>(std::stoi(f.sha256.substr(2 * i, 2), nullptr, 16));
    }
    h.update(raw);
  }
  const auto d = h.finish();
  return to_hex(d);
}

json GenerationReport::to_json() const {
  json scene_list = json::array();
  for (const auto& s : scenes) {
    json j = {{"scene_id", s.scene_id}, {"files", s.files}, {"zeroed", s.zeroed}};
    if (spec.kind == CorruptionKind::kCameraCrash) j["dropped_cameras"] = s.dropped_cameras;
    scene_list.push_back(std::move(j));
  }
  json file_list = json::array();
  for (const auto& f : files) {
    file_list.push_back({{"path", f.path}, {"source", f.source}, {"sha256", f.sha256}, {"zeroed", f.zeroed}});
  }
  return {
      {"corruption", to_string(spec.kind)},
      {"severity", to_string(spec.severity)},
      {"params", params_to_json(spec.params)},
      {"global_seed", global_seed},
      {"jobs", jobs},
      {"tree_root", tree_root.generic_string()},
      {"complete", complete},
      {"errors", errors},
      {"total_files", files.size()},
      {"digest", digest},
      {"wall_ms", wall_ms},
      {"scenes", std::move(scene_list)},
      {"files", std::move(file_list)},
  };
}

namespace {

struct Task {
  std::size_t scene;
  std::size_t sample;
  std::size_t camera;
};

bool is_within(const fs::path& child, const fs::path& parent) {
  const auto rel = child.lexically_relative(parent);
  return !rel.empty() && *rel.begin() != "..";
}

void check_layout(const CorruptionJob& job, const fs::path& root) {
  const fs::path out = fs::weakly_canonical(fs::absolute(job.output_root));
  const fs::path base = fs::weakly_canonical(fs::absolute(job.manifest.base_dir.empty() ? "." : job.manifest.base_dir));
  if (out == base) throw InvalidInput("output root must differ from the input root " + base.string());
  const fs::path abs_root = fs::weakly_canonical(fs::absolute(root));
  std::set<std::string> seen;
  for (const auto& scene : job.manifest.scenes) {
    for (const auto& sample : scene.samples) {
      for (const auto& [cam, path] : sample.images) {
        const fs::path src = fs::weakly_canonical(fs::absolute(job.manifest.resolve(path)));
        if (is_within(src, abs_root)) {
          throw InvalidInput("input image lies inside the output tree: " + src.string());
        }
        if (!seen.insert(output_relpath(path)).second) {
          throw InvalidInput("two inputs map to the same output file: " + output_relpath(path));
        }
      }
    }
  }
}

}  // namespace

GenerationReport run_pipeline(const CorruptionJob& job) {
  const auto started = std::chrono::steady_clock::now();
  const Manifest& manifest = job.manifest;
  manifest.validate();
  const CorruptionSpec& spec = job.spec;
  const fs::path root = tree_root(job.output_root, spec);
  check_layout(job, root);

  const int rig = static_cast<int>(manifest.cameras.size());
  if (const auto* crash = std::get_if<CameraCrashParams>(&spec.params)) {
    if (crash->dropped_cameras < 0 || crash->dropped_cameras > rig) {
      throw InvalidInput("cannot drop " + std::to_string(crash->dropped_cameras) + " cameras from a " +
                         std::to_string(rig) + "-camera rig");
    }
  }

  // Scene-level drop decisions are drawn up front; every per-image task
  // then only reads them.
  std::vector<DropMask> masks(manifest.scenes.size());
  std::vector<std::vector<std::string>> dropped_names(manifest.scenes.size());
  for (std::size_t s = 0; s < manifest.scenes.size(); ++s) {
    const Scene& scene = manifest.scenes[s];
    SeededRng rng(derive_seed(job.global_seed, scene.scene_id, kSceneLevel, "", spec.kind, spec.severity));
    const int n_samples = static_cast<int>(scene.samples.size());
    if (const auto* crash = std::get_if<CameraCrashParams>(&spec.params)) {
      const auto dropped = choose_crashed_cameras(rig, crash->dropped_cameras, rng);
      std::vector<bool> row(static_cast<std::size_t>(rig), false);
      for (int c : dropped) {
        row[static_cast<std::size_t>(c)] = true;
        dropped_names[s].push_back(manifest.cameras[static_cast<std::size_t>(c)]);
      }
      masks[s] = DropMask(static_cast<std::size_t>(n_samples), row);
    } else if (const auto* lost = std::get_if<FrameLostParams>(&spec.params)) {
      masks[s] = frame_lost_mask(n_samples, rig, lost->probability, rng, lost->whole_sample);
    }
  }

  std::vector<Task> tasks;
  tasks.reserve(manifest.image_count());
  for (std::size_t s = 0; s < manifest.scenes.size(); ++s) {
    for (std::size_t j = 0; j < manifest.scenes[s].samples.size(); ++j) {
      for (std::size_t c = 0; c < manifest.cameras.size(); ++c) tasks.push_back({s, j, c});
    }
  }

  std::vector<std::optional<FileRecord>> records(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  parallel_for(tasks.size(), job.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const Scene& scene = manifest.scenes[t.scene];
    const std::string& camera = manifest.cameras[t.camera];
    const std::string& source = scene.samples[t.sample].images.at(camera);
    try {
      const ImageBuffer input = load_image(manifest.resolve(source));
      FileRecord rec;
      ImageBuffer output;
      if (is_per_image(spec.kind)) {
        const auto seed = derive_seed(job.global_seed, scene.scene_id, t.sample, camera, spec.kind, spec.severity);
        output = apply_corruption(input, spec, seed);
      } else if (masks[t.scene][t.sample][t.camera]) {
        output = zero_image_like(input);
        rec.zeroed = true;
      } else {
        output = input;
      }
      const auto bytes = encode_png(output);
      rec.path = output_relpath(source);
      rec.source = source;
      rec.sha256 = to_hex(sha256(bytes));
      write_file(root / rec.path, bytes);
      records[i] = std::move(rec);
    } catch (const std::exception& e) {
      task_errors[i] = manifest.resolve(source).string() + ": " + e.what();
    }
  });

  GenerationReport report;
  report.spec = spec;
  report.global_seed = job.global_seed;
  report.jobs = job.jobs;
  report.tree_root = root;
  report.scenes.resize(manifest.scenes.size());
  for (std::size_t s = 0; s < manifest.scenes.size(); ++s) {
    report.scenes[s].scene_id = manifest.scenes[s].scene_id;
    report.scenes[s].dropped_cameras = dropped_names[s];
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_errors[i].empty()) {
      report.errors.push_back(task_errors[i]);
      continue;
    }
    auto& scene_report = report.scenes[tasks[i].scene];
    ++scene_report.files;
    if (records[i]->zeroed) ++scene_report.zeroed;
    report.files.push_back(std::move(*records[i]));
  }
  report.complete = report.errors.empty();
  report.digest = content_digest(report.files);
  if (report.complete) save_manifest(rewrite_manifest(manifest, root), root / "manifest.json");
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace corruptkit
