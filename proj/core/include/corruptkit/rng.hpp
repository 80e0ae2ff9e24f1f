#pragma once

#include <cstdint>
#include <string_view>

namespace corruptkit {

/// Counter-based SplitMix64 stream.
///
/// The n-th output (1-based) of a stream with key k is
/// `mix64(k + n * 0x9E3779B97F4A7C15)`, so the sequence is fully determined
/// by the 64-bit key and is identical on every platform. `split(label)`
/// derives a child stream from the key and the label alone; the parent's
/// position does not matter, so drawing more values from one child never
/// shifts another. Reference outputs live in tests/data/rng_vectors.json.
///
/// Single owner: not safe to share across threads without splitting first.
class SeededRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit SeededRng(std::uint64_t seed) noexcept : key_(seed) {}

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept;
  /// Box-Muller, one draw per call (the second variate is discarded so that
  /// the call sequence stays a pure function of the counter).
  double normal(double mean, double stddev) noexcept;
  /// Knuth multiplication for small means, rounded normal approximation
  /// above 64.
  std::uint64_t poisson(double mean) noexcept;

  SeededRng split(std::string_view label) const noexcept;

  static std::uint64_t mix64(std::uint64_t z) noexcept;
  /// 64-bit FNV-1a.
  static std::uint64_t hash_label(std::string_view label) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace corruptkit
