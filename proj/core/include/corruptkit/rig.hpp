#pragma once

#include <string>
#include <vector>

#include "corruptkit/image.hpp"
#include "corruptkit/rng.hpp"

namespace corruptkit {

/// Images of one scene, indexed [sample][camera] in rig order.
using SceneImages = std::vector<std::vector<ImageBuffer>>;

/// Drop decisions for one scene, indexed [sample][camera].
using DropMask = std::vector<std::vector<bool>>;

ImageBuffer zero_image_like(const ImageBuffer& img);

/// n_dropped distinct indices from [0, rig_size), drawn by a partial
/// Fisher-Yates shuffle and returned sorted. Throws InvalidInput if
/// n_dropped is negative or exceeds rig_size.
std::vector<int> choose_crashed_cameras(int rig_size, int n_dropped, SeededRng& rng);

/// The camera set is drawn once and applies to every sample of the scene.
DropMask camera_crash_mask(int sample_count, int rig_size, int n_dropped, SeededRng& rng);

/// Independent Bernoulli(p_drop) per (sample, camera) slot. Each slot draws
/// from its own child stream labelled by its indices. With whole_sample the
/// decision is made once per sample and covers all cameras.
DropMask frame_lost_mask(int sample_count, int rig_size, double p_drop, SeededRng& rng,
                         bool whole_sample = false);

/// Replaces masked images with zero images of the same size.
SceneImages apply_drop_mask(const SceneImages& images, const DropMask& mask);

struct CameraCrashResult {
  std::vector<int> dropped;
  SceneImages images;
};

CameraCrashResult apply_camera_crash(const SceneImages& images, int n_dropped, SeededRng& rng);
SceneImages apply_frame_lost(const SceneImages& images, double p_drop, SeededRng& rng,
                             bool whole_sample = false);

}  // namespace corruptkit
