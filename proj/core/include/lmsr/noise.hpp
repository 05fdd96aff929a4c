#pragma once

#include <cstdint>

#include "lmsr/dataset.hpp"

namespace lmsr {

/// SplitMix64: a counter-based 64-bit generator. The i-th output depends only
/// on the seed and i, so streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal by the Box-Muller transform (one draw per call).
  double normal();

 private:
  std::uint64_t state_;
};

/// Replaces each target y by y * (1 + level * g) with g standard normal.
/// level = 0 returns the data unchanged. Throws ValueError for level < 0.
Dataset inject_noise(const Dataset& data, double level, std::uint64_t seed);

}  // namespace lmsr
