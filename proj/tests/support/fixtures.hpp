#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "corruptkit/image.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/manifest.hpp"
#include "corruptkit/rng.hpp"

namespace corruptkit::testing {

/// Synthetic road scene: sky gradient, gray road, a few colored boxes and
/// mild noise. Mean intensity lands around 0.3-0.45 of full scale.
inline ImageBuffer synthetic_scene(int width, int height, std::uint64_t seed) {
  SeededRng rng(seed);
  ImageBuffer img(width, height);
  const int horizon = height * 2 / 5 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(height / 5 + 1)));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto* p = img.pixel(x, y);
      if (y < horizon) {
        const double t = static_cast<double>(y) / horizon;
        p[0] = static_cast<std::uint8_t>(90 + 60 * t);
        p[1] = static_cast<std::uint8_t>(120 + 50 * t);
        p[2] = static_cast<std::uint8_t>(170 + 30 * t);
      } else {
        p[0] = p[1] = p[2] = 60;
      }
    }
  }
  const int boxes = 3 + static_cast<int>(rng.uniform_index(4));
  for (int b = 0; b < boxes; ++b) {
    const int bw = 4 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(width / 4)));
    const int bh = 4 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(height / 4)));
    const int x0 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(width - bw)));
    const int y0 = horizon - bh / 2;
    const std::uint8_t col[3] = {static_cast<std::uint8_t>(rng.uniform_index(200)),
                                 static_cast<std::uint8_t>(rng.uniform_index(200)),
                                 static_cast<std::uint8_t>(rng.uniform_index(200))};
    for (int y = std::max(0, y0); y < std::min(height, y0 + bh); ++y) {
      for (int x = x0; x < x0 + bw; ++x) {
        auto* p = img.pixel(x, y);
        p[0] = col[0];
        p[1] = col[1];
        p[2] = col[2];
      }
    }
  }
  for (auto& v : img.data()) {
    const int n = static_cast<int>(v) + static_cast<int>(rng.uniform_index(11)) - 5;
    v = static_cast<std::uint8_t>(std::clamp(n, 0, 255));
  }
  return img;
}

/// Uniform random bytes.
inline ImageBuffer random_image(int width, int height, std::uint64_t seed) {
  SeededRng rng(seed);
  ImageBuffer img(width, height);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return img;
}

inline ImageBuffer constant_image(int width, int height, std::uint8_t value) {
  ImageBuffer img(width, height);
  for (auto& v : img.data()) v = value;
  return img;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "ck") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("corruptkit_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline const std::vector<std::string>& rig_cameras() {
  static const std::vector<std::string> cams = {"CAM_FRONT",  "CAM_FRONT_RIGHT", "CAM_FRONT_LEFT",
                                                "CAM_BACK",   "CAM_BACK_LEFT",   "CAM_BACK_RIGHT"};
  return cams;
}

/// Writes scenes x samples x 6 synthetic images (PNG, or JPEG when
/// `jpeg`) under dir/samples/<camera>/ plus dir/manifest.json.
inline Manifest write_fixture_dataset(const std::filesystem::path& dir, int scenes, int samples, int width = 64,
                                      int height = 36, bool jpeg = false) {
  Manifest m;
  m.cameras = rig_cameras();
  m.base_dir = dir;
  std::uint64_t seed = 1;
  for (int s = 0; s < scenes; ++s) {
    Scene scene;
    scene.scene_id = "scene-" + std::to_string(1000 + s);
    for (int j = 0; j < samples; ++j) {
      Sample sample;
      sample.timestamp = 1'000'000 * (s * 100 + j);
      for (const auto& cam : m.cameras) {
        const std::string rel = "samples/" + cam + "/" + scene.scene_id + "_" + std::to_string(j) +
                                (jpeg ? ".jpg" : ".png");
        save_image(dir / rel, synthetic_scene(width, height, seed++));
        sample.images[cam] = rel;
      }
      scene.samples.push_back(std::move(sample));
    }
    m.scenes.push_back(std::move(scene));
  }
  save_manifest(m, dir / "manifest.json");
  return m;
}

}  // namespace corruptkit::testing
