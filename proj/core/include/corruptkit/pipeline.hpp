#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "corruptkit/manifest.hpp"
#include "corruptkit/severity.hpp"

namespace corruptkit {

struct CorruptionJob {
  Manifest manifest;
  CorruptionSpec spec;
  std::uint64_t global_seed = 2023;
  std::filesystem::path output_root;
  int jobs = 1;
};

struct FileRecord {
  std::string path;    // relative to the tree root, '/' separated
  std::string source;  // input path as written in the manifest
  std::string sha256;
  bool zeroed = false;
};

struct SceneReport {
  std::string scene_id;
  std::size_t files = 0;
  std::size_t zeroed = 0;
  std::vector<std::string> dropped_cameras;  // Camera Crash only
};

struct GenerationReport {
  CorruptionSpec spec;
  std::uint64_t global_seed = 0;
  int jobs = 1;
  std::filesystem::path tree_root;
  std::vector<SceneReport> scenes;
  std::vector<FileRecord> files;  // manifest order: scene, sample, camera
  std::string digest;             // hex SHA-256 over (path, file hash) pairs
  double wall_ms = 0.0;
  bool complete = true;
  std::vector<std::string> errors;

  nlohmann::json to_json() const;
};

/// output_root / <kind> / <severity>
std::filesystem::path tree_root(const std::filesystem::path& output_root, const CorruptionSpec& spec);

/// Location of a corrupted image inside a tree: the input path made relative
/// (root name and root directory stripped, ".." components rejected) with
/// its extension replaced by ".png".
std::string output_relpath(const std::string& input_path);

/// The manifest describing a generated tree, with base_dir set to `root`.
/// Image paths become output_relpath() values; LiDAR paths are rewritten to
/// point back at the original files from `root`.
Manifest rewrite_manifest(const Manifest& input, const std::filesystem::path& root);

/// Digest over records in order: for each, path bytes, a NUL, then the raw
/// 32-byte file hash.
std::string content_digest(const std::vector<FileRecord>& files);

/// Generates one corrupted tree under tree_root(job.output_root, job.spec)
/// and writes its manifest.json. The returned report carries errors (with
/// the offending paths) and complete = false instead of throwing when inputs
/// cannot be read. Throws InvalidInput for jobs that are invalid up front
/// (output_root overlapping the input tree, bad parameters).
GenerationReport run_pipeline(const CorruptionJob& job);

}  // namespace corruptkit
