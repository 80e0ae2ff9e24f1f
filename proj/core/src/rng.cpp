#include "corruptkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace corruptkit {

std::uint64_t SeededRng::mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SeededRng::hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t SeededRng::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double SeededRng::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

std::uint64_t SeededRng::uniform_index(std::uint64_t bound) noexcept {
  // Lemire's nearly-divisionless rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool SeededRng::bernoulli(double p) noexcept { return uniform01() < p; }

double SeededRng::normal(double mean, double stddev) noexcept {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SeededRng::poisson(double mean) noexcept {
  if (!(mean > 0.0)) return 0;
  if (mean > 64.0) {
    const double v = std::round(normal(mean, std::sqrt(mean)));
    return v > 0.0 ? static_cast<std::uint64_t>(v) : 0;
  }
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform01();
  while (prod > limit) {
    ++k;
    prod *= uniform01();
  }
  return k;
}

SeededRng SeededRng::split(std::string_view label) const noexcept {
  return SeededRng(mix64(key_ ^ mix64(hash_label(label))));
}

}  // namespace corruptkit
