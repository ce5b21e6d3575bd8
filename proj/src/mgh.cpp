#include "ghyper/mgh.hpp"

#include <algorithm>
#include <cmath>

#include "ghyper/combinatorics.hpp"
#include "ghyper/enumerate.hpp"
#include "ghyper/errors.hpp"
#include "ghyper/rng.hpp"

namespace ghyper {

MghParams::MghParams(std::vector<double> weights, std::int64_t draws)
    : weights_(std::move(weights)), total_(0.0), draws_(draws) {
  if (weights_.size() < 2)
    throw Error(Errc::length_error, "need at least two colors, got " +
                                        std::to_string(weights_.size()));
  for (const double w : weights_)
    if (!std::isfinite(w)) throw Error(Errc::usage_error, "weights must be finite");
  if (draws_ < 1) throw Error(Errc::usage_error, "draw count must be positive");
  for (const double w : weights_) total_ += w;
  if (total_ == 0.0) throw Error(Errc::zero_total, "weights sum to zero");
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] / total_ <= 0.0)
      throw Error(Errc::sign_violation,
                  "C_" + std::to_string(i) + "/N must be positive");
  if (static_cast<double>(draws_ - 1) / total_ >= 1.0)
    throw Error(Errc::draw_count_violation, "(n-1)/N must be below 1");
}

std::int64_t weight_cap(double w) {
  // largest integer strictly below 1 + w
  const double c = std::ceil(w);
  return static_cast<std::int64_t>(c);
}

namespace {

std::vector<std::int64_t> support_caps(const MghParams& params) {
  const std::int64_t n = params.draws();
  std::vector<std::int64_t> caps(params.colors(), n);
  if (params.total() > 0.0)
    for (std::size_t i = 0; i < caps.size(); ++i)
      caps[i] = std::min<std::int64_t>(n, weight_cap(params.weights()[i]));
  return caps;
}

}  // namespace

SupportSet support(const MghParams& params) {
  SupportSet s;
  const auto caps = support_caps(params);
  for_each_composition(params.draws(), caps, [&](std::span<const std::int64_t> x) {
    s.outcomes.emplace_back(x.begin(), x.end());
    return true;
  });
  return s;
}

double pmf(const MghParams& params, std::span<const std::int64_t> x) {
  if (x.size() != params.colors())
    throw Error(Errc::dimension_mismatch,
                "outcome has " + std::to_string(x.size()) + " entries, expected " +
                    std::to_string(params.colors()));
  std::int64_t sum = 0;
  for (const std::int64_t xi : x) {
    if (xi < 0) throw Error(Errc::usage_error, "counts must be nonnegative");
    sum += xi;
  }
  if (sum != params.draws()) return 0.0;
  const auto& C = params.weights();
  for (std::size_t i = 0; i < C.size(); ++i)
    if (C[i] > 0.0 && static_cast<double>(x[i]) >= 1.0 + C[i]) return 0.0;

  double num = 1.0;
  for (std::size_t i = 0; i < C.size(); ++i) num *= binomial(C[i], x[i]);
  return num / binomial(params.total(), params.draws());
}

MomentReport moments(const MghParams& params) {
  MomentReport report;
  const double N = params.total();
  const double n = static_cast<double>(params.draws());
  for (const double c : params.weights()) report.means.push_back(n * c / N);
  if (N != 1.0) {
    std::vector<double> vars;
    for (const double c : params.weights())
      vars.push_back(n * c * (N - c) * (N - n) / (N * N * (N - 1.0)));
    report.variances = std::move(vars);
  }
  return report;
}

std::vector<Outcome> sample(const MghParams& params, std::uint64_t seed, std::int64_t trials) {
  if (trials < 1) throw Error(Errc::usage_error, "trials must be positive");
  const SupportSet s = support(params);
  std::vector<double> cumulative;
  cumulative.reserve(s.outcomes.size());
  double acc = 0.0;
  for (const Outcome& x : s.outcomes) {
    acc += pmf(params, x);
    cumulative.push_back(acc);
  }
  Rng rng(seed);
  std::vector<Outcome> draws;
  draws.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t)
    draws.push_back(s.outcomes[draw_cumulative(rng, cumulative)]);
  return draws;
}

}  // namespace ghyper
