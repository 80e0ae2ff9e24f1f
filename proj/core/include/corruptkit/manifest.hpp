#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace corruptkit {

struct Sample {
  std::int64_t timestamp = 0;  // microseconds
  std::map<std::string, std::string> images;  // camera name -> path
  std::optional<std::string> lidar_path;
  bool operator==(const Sample&) const = default;
};

struct Scene {
  std::string scene_id;
  std::vector<Sample> samples;
  bool operator==(const Scene&) const = default;
};

/// Dataset index. Relative paths are resolved against `base_dir`, which
/// load_manifest sets to the manifest file's directory.
struct Manifest {
  std::vector<std::string> cameras;
  std::vector<Scene> scenes;
  std::filesystem::path base_dir;

  std::size_t image_count() const noexcept;
  std::filesystem::path resolve(const std::string& path) const;

  /// Throws InvalidInput describing the first violated invariant: duplicate
  /// camera or scene id, samples out of timestamp order, or a sample whose
  /// camera set differs from the rig.
  void validate() const;

  /// Paths and structure only; base_dir is not compared.
  bool operator==(const Manifest& other) const {
    return cameras == other.cameras && scenes == other.scenes;
  }
};

Manifest manifest_from_json(const nlohmann::json& doc);
nlohmann::json manifest_to_json(const Manifest& manifest);

/// Parses and validates. base_dir becomes the file's parent directory.
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

}  // namespace corruptkit
