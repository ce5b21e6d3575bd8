#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ghyper/types.hpp"

namespace ghyper {

/// Validated parameters of the generalized inverse hypergeometric
/// distribution: weights C_0..C_k (color 0 distinguished) and the required
/// color-0 draw count gamma. Construction enforces at least two colors,
/// N != 0, C_i/N > 0 for i >= 1, and C_0/N > (gamma-1)/N (GammaViolation).
class MighParams {
 public:
  MighParams(std::vector<double> weights, std::int64_t gamma);

  const std::vector<double>& weights() const { return weights_; }
  double total() const { return total_; }        // N
  std::int64_t gamma() const { return gamma_; }
  std::size_t colors() const { return weights_.size(); }
  bool infinite_support() const { return total_ < 0; }

 private:
  std::vector<double> weights_;
  double total_;
  std::int64_t gamma_;
};

/// Support tuples are full (gamma, x_1..x_k). Finite and complete when
/// N > 0 (tail_epsilon ignored). When N < 0 the support is infinite:
/// enumeration runs in increasing total draw count (lexicographic in
/// (x_1..x_k) within a level) until the accumulated mass reaches
/// 1 - tail_epsilon; throws TailEpsilonZeroOnInfiniteSupport if
/// tail_epsilon = 0 there.
SupportSet support(const MighParams& params, double tail_epsilon);

/// Probability of (x_1..x_k); x_0 is implicitly gamma.
double pmf(const MighParams& params, std::span<const std::int64_t> x);

/// Closed-form means gamma*C_i/(C_0+1) for i = 1..k; no variances.
MomentReport mean(const MighParams& params);

/// Exact sampler: enumeration + inverse CDF when N > 0; when N < 0, the
/// sequential chain with step probabilities (C_i - m_i)/(N - m), stopped at
/// gamma color-0 draws. Outcomes are (x_1..x_k). Deterministic given seed.
std::vector<Outcome> sample(const MighParams& params, std::uint64_t seed, std::int64_t trials);

/// Streams (full tuple, mass) in enumeration order without materializing the
/// support; same truncation rule as support(). Visitor returns false to stop
/// early. Reports accumulated mass and whether truncation was applied.
struct EnumerationStats {
  double accumulated = 0.0;
  bool truncated = false;
};
EnumerationStats for_each_mass(const MighParams& params, double tail_epsilon,
                               const std::function<bool(std::span<const std::int64_t>, double)>& visit);

}  // namespace ghyper
