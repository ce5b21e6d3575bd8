#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ghyper/mgh.hpp"
#include "ghyper/migh.hpp"
#include "ghyper/types.hpp"

namespace ghyper {

/// An urn: initial ball counts a_0..a_k (each >= 1) and the reinforcement c
/// added after every draw (c < 0 removes balls; c = -1 is sampling without
/// replacement, c = 0 with replacement).
class UrnParams {
 public:
  UrnParams(std::vector<std::int64_t> balls, std::int64_t reinforcement);

  const std::vector<std::int64_t>& balls() const { return balls_; }
  std::int64_t reinforcement() const { return reinforcement_; }
  std::int64_t total() const { return total_; }
  std::size_t colors() const { return balls_.size(); }

 private:
  std::vector<std::int64_t> balls_;
  std::int64_t reinforcement_;
  std::int64_t total_;
};

/// Urn parameters derived from distribution weights at a given scale a:
/// c = -ceil(a/N), a_i = floor(a C_i / N) for i >= 1, a_0 the remainder.
struct UrnDerivation {
  UrnParams urn;
  std::int64_t a_scale;
  /// a_0 + (gamma-1)c > 0 for inverse-sourced derivations (true otherwise);
  /// scales violating it are outside the usable set for the inverse case.
  bool color0_feasible;
};

/// Requires a_scale > N/C_i for i = 1..k (ScaleTooSmall otherwise);
/// floor/ceil use the mathematical convention at negative arguments.
UrnDerivation derive_urn(const MghParams& params, std::int64_t a_scale);
UrnDerivation derive_urn(const MighParams& params, std::int64_t a_scale);

/// Fixed-draw urn pmf. Requires a + (n-1)c > 0 (InfeasibleTotal); 0 when some
/// color's factor chain a_i + (l-1)c hits a nonpositive value within x_i.
double pe_pmf(const UrnParams& urn, std::int64_t draws, std::span<const std::int64_t> x);

/// Inverse urn pmf over (x_1..x_k) with gamma color-0 draws. Requires
/// a_0 + c(gamma-1) > 0 (InfeasibleColorZero) and a + (n-1)c > 0
/// (InfeasibleTotal) at n = gamma + sum x_i.
double ipe_pmf(const UrnParams& urn, std::int64_t gamma, std::span<const std::int64_t> x);

/// Positive-mass tuples of the fixed-draw urn law.
SupportSet pe_support(const UrnParams& urn, std::int64_t draws);

/// Positive-mass tuples (gamma, x_1..x_k) of the inverse urn law. Finite for
/// c < 0; for c >= 0 truncated at accumulated mass 1 - tail_epsilon.
SupportSet ipe_support(const UrnParams& urn, std::int64_t gamma, double tail_epsilon);

/// Streaming form of ipe_support (masses included, nothing materialized).
EnumerationStats for_each_ipe_mass(const UrnParams& urn, std::int64_t gamma, double tail_epsilon,
                                   const std::function<bool(std::span<const std::int64_t>, double)>& visit);

/// Literal simulation: uniform draw among active balls, reinforce by c, drop
/// a color from the drawable set once its count falls below -c (for c = -1
/// this is plain exhaustion). n draws per trial.
std::vector<Outcome> pe_sample(const UrnParams& urn, std::int64_t draws, std::uint64_t seed,
                               std::int64_t trials);

/// Same dynamics, stopping at gamma color-0 draws; returns (x_1..x_k) per
/// trial. Throws StepCapExceeded if a trial runs past step_cap draws.
std::vector<Outcome> ipe_sample(const UrnParams& urn, std::int64_t gamma, std::uint64_t seed,
                                std::int64_t trials, std::int64_t step_cap = 1'000'000);

}  // namespace ghyper
