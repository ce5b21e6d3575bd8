#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghyper/types.hpp"

namespace ghyper {

/// Validated parameters of the generalized hypergeometric distribution:
/// real color weights C_0..C_k with N = sum C_i, and a draw count n.
/// Construction enforces, in order: at least two colors (LengthError),
/// N != 0 (ZeroTotal), C_i/N > 0 for every i (SignViolation), and
/// (n-1)/N < 1 (DrawCountViolation). Throws Error on violation.
class MghParams {
 public:
  MghParams(std::vector<double> weights, std::int64_t draws);

  const std::vector<double>& weights() const { return weights_; }
  double total() const { return total_; }       // N
  std::int64_t draws() const { return draws_; } // n
  std::size_t colors() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
  double total_;
  std::int64_t draws_;
};

/// Largest admissible count for a color of weight w > 0: the biggest integer
/// strictly below 1 + w (equals w itself at integers, ceil(w) otherwise).
std::int64_t weight_cap(double w);

/// Complete support: tuples summing to n, capped per color when N > 0.
SupportSet support(const MghParams& params);

/// Probability of outcome x (length k+1). 0 off-support; throws
/// DimensionMismatch on wrong length.
double pmf(const MghParams& params, std::span<const std::int64_t> x);

/// Means nC_i/N and variances nC_i(N-C_i)(N-n)/(N^2(N-1)); variances are
/// absent when N = 1.
MomentReport moments(const MghParams& params);

/// `trials` i.i.d. outcomes by inverse-CDF lookup over the enumerated
/// support. Deterministic given seed.
std::vector<Outcome> sample(const MghParams& params, std::uint64_t seed, std::int64_t trials);

}  // namespace ghyper
