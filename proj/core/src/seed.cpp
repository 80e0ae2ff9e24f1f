#include "corruptkit/seed.hpp"

#include "corruptkit/digest.hpp"

namespace corruptkit {

namespace {

void put_u64(Sha256& h, std::uint64_t v) {
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
  h.update(std::span<const std::uint8_t>(le, 8));
}

void put_str(Sha256& h, std::string_view s) {
  put_u64(h, s.size());
  h.update(s);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view scene_id, std::uint64_t sample_index,
                          std::string_view camera_name, CorruptionKind kind, Severity severity) {
  Sha256 h;
  put_str(h, "corruptkit.seed.v1");
  put_u64(h, global_seed);
  put_str(h, scene_id);
  put_u64(h, sample_index);
  put_str(h, camera_name);
  put_str(h, to_string(kind));
  put_str(h, to_string(severity));
  const auto d = h.finish();
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | d[static_cast<std::size_t>(i)];
  return seed;
}

}  // namespace corruptkit
