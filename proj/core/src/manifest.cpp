#include "corruptkit/manifest.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "corruptkit/error.hpp"

namespace corruptkit {

using nlohmann::json;

std::size_t Manifest::image_count() const noexcept {
  std::size_t n = 0;
  for (const auto& scene : scenes) {
    for (const auto& sample : scene.samples) n += sample.images.size();
  }
  return n;
}

std::filesystem::path Manifest::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

void Manifest::validate() const {
  std::set<std::string> cams;
  for (const auto& c : cameras) {
    if (c.empty()) throw InvalidInput("manifest: empty camera name");
    if (!cams.insert(c).second) throw InvalidInput("manifest: duplicate camera '" + c + "'");
  }
  std::set<std::string> ids;
  for (const auto& scene : scenes) {
    if (!ids.insert(scene.scene_id).second) {
      throw InvalidInput("manifest: duplicate scene_id '" + scene.scene_id + "'");
    }
    for (std::size_t i = 0; i < scene.samples.size(); ++i) {
      const auto& sample = scene.samples[i];
      if (i > 0 && sample.timestamp < scene.samples[i - 1].timestamp) {
        throw InvalidInput("manifest: scene '" + scene.scene_id + "' sample " + std::to_string(i) +
                           " is out of timestamp order");
      }
      if (sample.images.size() != cameras.size()) {
        throw InvalidInput("manifest: scene '" + scene.scene_id + "' sample " + std::to_string(i) + " has " +
                           std::to_string(sample.images.size()) + " images for a " +
                           std::to_string(cameras.size()) + "-camera rig");
      }
      for (const auto& [cam, path] : sample.images) {
        if (!cams.contains(cam)) {
          throw InvalidInput("manifest: scene '" + scene.scene_id + "' sample " + std::to_string(i) +
                             " references unknown camera '" + cam + "'");
        }
        if (path.empty()) throw InvalidInput("manifest: empty image path");
      }
    }
  }
}

Manifest manifest_from_json(const json& doc) {
  Manifest m;
  try {
    for (const auto& c : doc.at("cameras")) m.cameras.push_back(c.get<std::string>());
    for (const auto& s : doc.at("scenes")) {
      Scene scene;
      scene.scene_id = s.at("scene_id").get<std::string>();
      for (const auto& smp : s.at("samples")) {
        Sample sample;
        sample.timestamp = smp.at("timestamp").get<std::int64_t>();
        for (const auto& [cam, path] : smp.at("images").items()) sample.images[cam] = path.get<std::string>();
        if (const auto it = smp.find("lidar"); it != smp.end() && !it->is_null()) {
          sample.lidar_path = it->get<std::string>();
        }
        scene.samples.push_back(std::move(sample));
      }
      m.scenes.push_back(std::move(scene));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

json manifest_to_json(const Manifest& m) {
  json scenes = json::array();
  for (const auto& scene : m.scenes) {
    json samples = json::array();
    for (const auto& sample : scene.samples) {
      json s = {{"timestamp", sample.timestamp}, {"images", sample.images}};
      if (sample.lidar_path) s["lidar"] = *sample.lidar_path;
      samples.push_back(std::move(s));
    }
    scenes.push_back({{"scene_id", scene.scene_id}, {"samples", std::move(samples)}});
  }
  return {{"cameras", m.cameras}, {"scenes", std::move(scenes)}};
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("manifest " + path.string() + ": " + e.what());
  }
  Manifest m = manifest_from_json(doc);
  m.base_dir = path.parent_path();
  return m;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << manifest_to_json(manifest).dump(2) << '\n';
}

}  // namespace corruptkit
