#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "corruptkit/image.hpp"

namespace corruptkit {

enum class PointLayout { kXyzi = 4, kXyzir = 5 };

/// Columnar point set. x forward, y left, z up (meters). ring is present
/// only for the 5-float layout.
struct PointCloud {
  std::vector<float> x;
  std::vector<float> y;
  std::vector<float> z;
  std::vector<float> intensity;
  std::optional<std::vector<float>> ring;

  std::size_t size() const noexcept { return x.size(); }
  PointLayout layout() const noexcept {
    return ring ? PointLayout::kXyzir : PointLayout::kXyzi;
  }
  void reserve(std::size_t n);
  void push_back(float px, float py, float pz, float pi, float pr = 0.0f);

  bool operator==(const PointCloud&) const = default;
};

/// Keeps points with |azimuth| <= half_angle_deg, where the azimuth is
/// atan2(y, x) minus `yaw_offset_deg` wrapped to (-180, 180]. The yaw offset
/// rotates the window when the sensor frame and the reference frame differ.
/// Order is preserved. Throws InvalidInput unless half_angle_deg is in
/// (0, 180].
PointCloud fov_crop(const PointCloud& pc, double half_angle_deg = 45.0,
                    double yaw_offset_deg = 0.0);

/// All-zero image of the same dimensions.
ImageBuffer blackout_camera(const ImageBuffer& img);

/// Packed little-endian float32 records. Throws InvalidInput naming the byte
/// offset of the trailing partial record when the length is misaligned.
PointCloud decode_points(std::span<const std::uint8_t> bytes, PointLayout layout);
std::vector<std::uint8_t> encode_points(const PointCloud& pc);

PointCloud load_points(const std::filesystem::path& path, PointLayout layout);
void save_points(const PointCloud& pc, const std::filesystem::path& path);

}  // namespace corruptkit
