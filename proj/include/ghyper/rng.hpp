#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ghyper {

// Generator contract: std::mt19937_64 seeded with the user seed. The engine's
// output sequence is fixed by the C++ standard, and every variate below is
// derived from it with explicit arithmetic, so identical seeds give identical
// samples on every platform.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n), n > 0 (n well below 2^53).
inline std::int64_t uniform_below(Rng& g, std::int64_t n) {
  auto v = static_cast<std::int64_t>(uniform01(g) * static_cast<double>(n));
  return v < n ? v : n - 1;
}

/// Index drawn from the cumulative mass table (nondecreasing, last ~1).
inline std::size_t draw_cumulative(Rng& g, std::span<const double> cumulative) {
  const double u = uniform01(g);
  std::size_t lo = 0, hi = cumulative.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (cumulative[mid] > u)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace ghyper
