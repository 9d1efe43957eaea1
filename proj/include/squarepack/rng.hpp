#pragma once

#include <cstdint>

namespace squarepack {

/// xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D), seeded
/// through one splitmix64 step so that small consecutive seeds diverge.
/// Fully specified so that a seed reproduces the same sequence anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in the half-open interval (lo, hi].
  double uniform_open_closed(double lo, double hi) {
    return lo + (hi - lo) * (1.0 - uniform01());
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace squarepack
