#include "ghyper/migh.hpp"

#include <algorithm>
#include <cmath>

#include "ghyper/combinatorics.hpp"
#include "ghyper/enumerate.hpp"
#include "ghyper/errors.hpp"
#include "ghyper/mgh.hpp"
#include "ghyper/rng.hpp"

namespace ghyper {

MighParams::MighParams(std::vector<double> weights, std::int64_t gamma)
    : weights_(std::move(weights)), total_(0.0), gamma_(gamma) {
  if (weights_.size() < 2)
    throw Error(Errc::length_error, "need at least two colors, got " +
                                        std::to_string(weights_.size()));
  for (const double w : weights_)
    if (!std::isfinite(w)) throw Error(Errc::usage_error, "weights must be finite");
  if (gamma_ < 1) throw Error(Errc::usage_error, "gamma must be positive");
  for (const double w : weights_) total_ += w;
  if (total_ == 0.0) throw Error(Errc::zero_total, "weights sum to zero");
  for (std::size_t i = 1; i < weights_.size(); ++i)
    if (weights_[i] / total_ <= 0.0)
      throw Error(Errc::sign_violation,
                  "C_" + std::to_string(i) + "/N must be positive");
  if (weights_[0] / total_ <= static_cast<double>(gamma_ - 1) / total_)
    throw Error(Errc::gamma_violation, "C_0/N must exceed (gamma-1)/N");
}

EnumerationStats for_each_mass(const MighParams& params, double tail_epsilon,
                               const std::function<bool(std::span<const std::int64_t>, double)>& visit) {
  if (!(tail_epsilon >= 0.0) || tail_epsilon >= 1.0)
    throw Error(Errc::usage_error, "tail_epsilon must lie in [0, 1)");
  const bool finite = params.total() > 0.0;
  if (!finite && tail_epsilon == 0.0)
    throw Error(Errc::tail_epsilon_zero_on_infinite_support,
                "N < 0 gives an infinite support; a positive tail_epsilon is required");

  const auto& C = params.weights();
  const double N = params.total();
  const std::int64_t gamma = params.gamma();
  const std::size_t k = params.colors() - 1;

  std::vector<std::int64_t> caps(k, 0);
  std::int64_t caps_sum = 0;
  if (finite) {
    for (std::size_t i = 0; i < k; ++i) {
      caps[i] = weight_cap(C[i + 1]);
      caps_sum += caps[i];
    }
  }

  const double head = binomial(C[0], gamma);
  double denom = binomial(N, gamma);  // gb(N, n) tracked per level

  // per-color gb(C_i, x) tables, grown level by level
  std::vector<std::vector<double>> gb(k, std::vector<double>{1.0});

  std::vector<std::int64_t> full(k + 1, 0);
  full[0] = gamma;

  EnumerationStats stats;
  bool stop = false;
  for (std::int64_t m = 0; !stop; ++m) {
    const std::int64_t n = gamma + m;
    if (finite && static_cast<double>(n - 1) >= N) break;
    if (finite && m > caps_sum) break;
    if (m > 0) denom *= (N - static_cast<double>(n - 1)) / static_cast<double>(n);

    std::vector<std::int64_t> level_caps(k);
    for (std::size_t i = 0; i < k; ++i) {
      level_caps[i] = finite ? std::min(caps[i], m) : m;
      auto& t = gb[i];
      while (static_cast<std::int64_t>(t.size()) <= level_caps[i]) {
        const auto x = static_cast<double>(t.size());
        t.push_back(t.back() * (C[i + 1] - (x - 1.0)) / x);
      }
    }

    const double level_factor = static_cast<double>(gamma) / static_cast<double>(n) * head / denom;
    for_each_composition(m, level_caps, [&](std::span<const std::int64_t> x) {
      double mass = level_factor;
      for (std::size_t i = 0; i < k; ++i) mass *= gb[i][static_cast<std::size_t>(x[i])];
      std::copy(x.begin(), x.end(), full.begin() + 1);
      stats.accumulated += mass;
      if (!visit(std::span<const std::int64_t>(full), mass)) {
        stop = true;
        return false;
      }
      if (!finite && stats.accumulated >= 1.0 - tail_epsilon) {
        stats.truncated = true;
        stop = true;
        return false;
      }
      return true;
    });
  }
  return stats;
}

SupportSet support(const MighParams& params, double tail_epsilon) {
  SupportSet s;
  const EnumerationStats stats =
      for_each_mass(params, tail_epsilon, [&](std::span<const std::int64_t> full, double) {
        s.outcomes.emplace_back(full.begin(), full.end());
        return true;
      });
  s.truncated = stats.truncated;
  s.tail_mass_bound = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  return s;
}

double pmf(const MighParams& params, std::span<const std::int64_t> x) {
  const std::size_t k = params.colors() - 1;
  if (x.size() != k)
    throw Error(Errc::dimension_mismatch, "outcome has " + std::to_string(x.size()) +
                                              " entries, expected " + std::to_string(k));
  const auto& C = params.weights();
  const double N = params.total();
  const std::int64_t gamma = params.gamma();
  std::int64_t n = gamma;
  for (const std::int64_t xi : x) {
    if (xi < 0) throw Error(Errc::usage_error, "counts must be nonnegative");
    n += xi;
  }
  if (static_cast<double>(n - 1) / N >= 1.0) return 0.0;
  for (std::size_t i = 0; i < k; ++i)
    if (C[i + 1] > 0.0 && static_cast<double>(x[i]) >= 1.0 + C[i + 1]) return 0.0;

  double num = binomial(C[0], gamma);
  for (std::size_t i = 0; i < k; ++i) num *= binomial(C[i + 1], x[i]);
  return static_cast<double>(gamma) / static_cast<double>(n) * num / binomial(N, n);
}

MomentReport mean(const MighParams& params) {
  MomentReport report;
  const double c0 = params.weights()[0];
  for (std::size_t i = 1; i < params.colors(); ++i)
    report.means.push_back(static_cast<double>(params.gamma()) * params.weights()[i] / (c0 + 1.0));
  return report;
}

namespace {

std::vector<Outcome> sample_infinite(const MighParams& params, std::uint64_t seed,
                                     std::int64_t trials) {
  // sequential chain: step probabilities (C_i - m_i)/(N - m), all in (0, 1)
  // when every weight is negative; stops at gamma color-0 draws
  const auto& C = params.weights();
  const double N = params.total();
  const std::int64_t gamma = params.gamma();
  const std::size_t colors = params.colors();
  Rng rng(seed);
  std::vector<Outcome> draws;
  draws.reserve(static_cast<std::size_t>(trials));
  std::vector<std::int64_t> counts(colors, 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    std::int64_t total_drawn = 0;
    while (counts[0] < gamma) {
      const double u = uniform01(rng);
      const double denom = N - static_cast<double>(total_drawn);
      double acc = 0.0;
      std::size_t chosen = colors - 1;
      for (std::size_t i = 0; i + 1 < colors; ++i) {
        acc += (C[i] - static_cast<double>(counts[i])) / denom;
        if (u < acc) {
          chosen = i;
          break;
        }
      }
      ++counts[chosen];
      ++total_drawn;
    }
    draws.emplace_back(counts.begin() + 1, counts.end());
  }
  return draws;
}

}  // namespace

std::vector<Outcome> sample(const MighParams& params, std::uint64_t seed, std::int64_t trials) {
  if (trials < 1) throw Error(Errc::usage_error, "trials must be positive");
  if (params.infinite_support()) return sample_infinite(params, seed, trials);

  std::vector<Outcome> outcomes;
  std::vector<double> cumulative;
  double acc = 0.0;
  for_each_mass(params, 0.0, [&](std::span<const std::int64_t> full, double mass) {
    outcomes.emplace_back(full.begin() + 1, full.end());
    acc += mass;
    cumulative.push_back(acc);
    return true;
  });
  Rng rng(seed);
  std::vector<Outcome> draws;
  draws.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t)
    draws.push_back(outcomes[draw_cumulative(rng, cumulative)]);
  return draws;
}

}  // namespace ghyper
