#include "lmsr/noise.hpp"

#include <cmath>
#include <numbers>

#include "lmsr/errors.hpp"

namespace lmsr {

double SplitMix64::normal() {
  // 1 - u keeps the logarithm's argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset inject_noise(const Dataset& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw ValueError("noise level must be non-negative");
  if (level == 0.0) return data;
  SplitMix64 rng(seed);
  std::vector<double> y = data.targets();
  for (double& v : y) v *= 1.0 + level * rng.normal();
  return data.with_targets(std::move(y));
}

}  // namespace lmsr
