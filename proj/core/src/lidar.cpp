#include "corruptkit/lidar.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "corruptkit/error.hpp"
#include "corruptkit/image_io.hpp"

namespace corruptkit {

static_assert(std::endian::native == std::endian::little, "point I/O assumes a little-endian host");

void PointCloud::reserve(std::size_t n) {
  x.reserve(n);
  y.reserve(n);
  z.reserve(n);
  intensity.reserve(n);
  if (ring) ring->reserve(n);
}

void PointCloud::push_back(float px, float py, float pz, float pi, float pr) {
  x.push_back(px);
  y.push_back(py);
  z.push_back(pz);
  intensity.push_back(pi);
  if (ring) ring->push_back(pr);
}

PointCloud fov_crop(const PointCloud& pc, double half_angle_deg, double yaw_offset_deg) {
  if (!(half_angle_deg > 0.0 && half_angle_deg <= 180.0)) {
    throw InvalidInput("half angle must be in (0, 180] degrees");
  }
  PointCloud out;
  if (pc.ring) out.ring.emplace();
  if (half_angle_deg == 180.0) return pc;

  for (std::size_t i = 0; i < pc.size(); ++i) {
    double az = std::atan2(static_cast<double>(pc.y[i]), static_cast<double>(pc.x[i])) * 180.0 / std::numbers::pi -
                yaw_offset_deg;
    while (az > 180.0) az -= 360.0;
    while (az <= -180.0) az += 360.0;
    if (std::fabs(az) <= half_angle_deg) {
      out.push_back(pc.x[i], pc.y[i], pc.z[i], pc.intensity[i], pc.ring ? (*pc.ring)[i] : 0.0f);
    }
  }
  return out;
}

ImageBuffer blackout_camera(const ImageBuffer& img) { return ImageBuffer(img.width(), img.height()); }

PointCloud decode_points(std::span<const std::uint8_t> bytes, PointLayout layout) {
  const std::size_t stride = static_cast<std::size_t>(layout) * sizeof(float);
  if (bytes.size() % stride != 0) {
    const std::size_t offset = bytes.size() - bytes.size() % stride;
    throw InvalidInput("point file truncated: partial record at byte offset " + std::to_string(offset) +
                       " (record size " + std::to_string(stride) + ")");
  }
  const std::size_t n = bytes.size() / stride;
  PointCloud pc;
  if (layout == PointLayout::kXyzir) pc.ring.emplace();
  pc.reserve(n);
  float rec[5] = {};
  for (std::size_t i = 0; i < n; ++i) {
    std::memcpy(rec, bytes.data() + i * stride, stride);
    pc.push_back(rec[0], rec[1], rec[2], rec[3], rec[4]);
  }
  return pc;
}

std::vector<std::uint8_t> encode_points(const PointCloud& pc) {
  const std::size_t fields = static_cast<std::size_t>(pc.layout());
  std::vector<std::uint8_t> out(pc.size() * fields * sizeof(float));
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const float rec[5] = {pc.x[i], pc.y[i], pc.z[i], pc.intensity[i], pc.ring ? (*pc.ring)[i] : 0.0f};
    std::memcpy(out.data() + i * fields * sizeof(float), rec, fields * sizeof(float));
  }
  return out;
}

PointCloud load_points(const std::filesystem::path& path, PointLayout layout) {
  const auto bytes = read_file(path);
  try {
    return decode_points(bytes, layout);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_points(const PointCloud& pc, const std::filesystem::path& path) { write_file(path, encode_points(pc)); }

}  // namespace corruptkit
