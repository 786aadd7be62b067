#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dnash/entropy.hpp"

namespace dnash {

/// Maps a 64-bit engine output to [0, 1) using its top 53 bits. Unlike
/// std::uniform_real_distribution the mapping is identical on every standard
/// library, which keeps seeded scenarios portable.
template <typename Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(static_cast<std::uint64_t>(rng()) >> 11) * 0x1.0p-53;
}

template <typename Rng>
double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

template <typename Rng>
std::vector<double> sample_simplex_point(const ScaledSimplex& space, Rng& rng) {
  std::vector<double> x(space.dimension());
  double total = 0.0;
  for (double& v : x) {
    v = -std::log1p(-uniform01(rng));
    total += v;
  }
  if (total <= 0.0) return space.uniform_point();
  for (double& v : x) v = space.scale() * v / total;
  return x;
}

}  // namespace dnash
