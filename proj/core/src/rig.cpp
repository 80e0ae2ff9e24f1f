#include "corruptkit/rig.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "corruptkit/error.hpp"

namespace corruptkit {

ImageBuffer zero_image_like(const ImageBuffer& img) { return ImageBuffer(img.width(), img.height()); }

std::vector<int> choose_crashed_cameras(int rig_size, int n_dropped, SeededRng& rng) {
  if (n_dropped < 0) throw InvalidInput("number of dropped cameras must be >= 0");
  if (n_dropped > rig_size) {
    throw InvalidInput("cannot drop " + std::to_string(n_dropped) + " cameras from a " +
                       std::to_string(rig_size) + "-camera rig");
  }
  std::vector<int> order(static_cast<std::size_t>(rig_size));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < n_dropped; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.uniform_index(static_cast<std::uint64_t>(rig_size - i));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  order.resize(static_cast<std::size_t>(n_dropped));
  std::sort(order.begin(), order.end());
  return order;
}

DropMask camera_crash_mask(int sample_count, int rig_size, int n_dropped, SeededRng& rng) {
  const auto dropped = choose_crashed_cameras(rig_size, n_dropped, rng);
  std::vector<bool> row(static_cast<std::size_t>(rig_size), false);
  for (int c : dropped) row[static_cast<std::size_t>(c)] = true;
  return DropMask(static_cast<std::size_t>(sample_count), row);
}

DropMask frame_lost_mask(int sample_count, int rig_size, double p_drop, SeededRng& rng, bool whole_sample) {
  if (!(p_drop >= 0.0 && p_drop <= 1.0)) throw InvalidInput("frame drop probability must be in [0, 1]");
  DropMask mask(static_cast<std::size_t>(sample_count), std::vector<bool>(static_cast<std::size_t>(rig_size)));
  for (int s = 0; s < sample_count; ++s) {
    const std::string sample_label = "frame/" + std::to_string(s);
    if (whole_sample) {
      const bool lost = rng.split(sample_label).bernoulli(p_drop);
      std::fill(mask[static_cast<std::size_t>(s)].begin(), mask[static_cast<std::size_t>(s)].end(), lost);
      continue;
    }
    for (int c = 0; c < rig_size; ++c) {
      mask[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] =
          rng.split(sample_label + "/" + std::to_string(c)).bernoulli(p_drop);
    }
  }
  return mask;
}

SceneImages apply_drop_mask(const SceneImages& images, const DropMask& mask) {
  if (mask.size() != images.size()) throw InvalidInput("drop mask does not match the scene");
  SceneImages out = images;
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (mask[s].size() != images[s].size()) throw InvalidInput("drop mask does not match the rig");
    for (std::size_t c = 0; c < images[s].size(); ++c) {
      if (mask[s][c]) out[s][c] = zero_image_like(images[s][c]);
    }
  }
  return out;
}

namespace {

int rig_size_of(const SceneImages& images) {
  if (images.empty()) return 0;
  const auto n = images.front().size();
  for (const auto& sample : images) {
    if (sample.size() != n) throw InvalidInput("samples in a scene must have the same camera count");
  }
  return static_cast<int>(n);
}

}  // namespace

CameraCrashResult apply_camera_crash(const SceneImages& images, int n_dropped, SeededRng& rng) {
  const int rig = rig_size_of(images);
  auto dropped = choose_crashed_cameras(rig, n_dropped, rng);
  std::vector<bool> row(static_cast<std::size_t>(rig), false);
  for (int c : dropped) row[static_cast<std::size_t>(c)] = true;
  const DropMask mask(images.size(), row);
  return {std::move(dropped), apply_drop_mask(images, mask)};
}

SceneImages apply_frame_lost(const SceneImages& images, double p_drop, SeededRng& rng, bool whole_sample) {
  const int rig = rig_size_of(images);
  return apply_drop_mask(images,
                         frame_lost_mask(static_cast<int>(images.size()), rig, p_drop, rng, whole_sample));
}

}  // namespace corruptkit
