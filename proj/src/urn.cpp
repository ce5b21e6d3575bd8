#include "ghyper/urn.hpp"

#include <algorithm>
#include <cmath>

#include "ghyper/combinatorics.hpp"
#include "ghyper/enumerate.hpp"
#include "ghyper/errors.hpp"
#include "ghyper/rng.hpp"

namespace ghyper {

UrnParams::UrnParams(std::vector<std::int64_t> balls, std::int64_t reinforcement)
    : balls_(std::move(balls)), reinforcement_(reinforcement), total_(0) {
  if (balls_.size() < 2)
    throw Error(Errc::length_error, "need at least two colors, got " +
                                        std::to_string(balls_.size()));
  for (const std::int64_t b : balls_) {
    if (b < 1) throw Error(Errc::non_positive_ball_count, "every initial count must be >= 1");
    total_ += b;
  }
}

namespace {

UrnDerivation derive_impl(const std::vector<double>& C, double N, std::int64_t a_scale,
                          std::int64_t gamma_or_zero) {
  if (a_scale < 1) throw Error(Errc::usage_error, "a_scale must be a positive integer");
  for (std::size_t i = 1; i < C.size(); ++i) {
    const long double bound = static_cast<long double>(N) / static_cast<long double>(C[i]);
    if (!(static_cast<long double>(a_scale) > bound))
      throw Error(Errc::scale_too_small,
                  "a_scale must exceed N/C_" + std::to_string(i) + " = " + std::to_string(static_cast<double>(bound)));
  }
  const auto a = static_cast<long double>(a_scale);
  const auto c = -static_cast<std::int64_t>(std::ceil(a / static_cast<long double>(N)));
  std::vector<std::int64_t> balls(C.size(), 0);
  std::int64_t assigned = 0;
  for (std::size_t i = 1; i < C.size(); ++i) {
    balls[i] = static_cast<std::int64_t>(
        std::floor(a * static_cast<long double>(C[i]) / static_cast<long double>(N)));
    assigned += balls[i];
  }
  balls[0] = a_scale - assigned;
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (balls[i] < 1)
      throw Error(Errc::non_positive_ball_count,
                  "derived a_" + std::to_string(i) + " = " + std::to_string(balls[i]));
  const bool color0_ok =
      gamma_or_zero == 0 || balls[0] + (gamma_or_zero - 1) * c > 0;
  return UrnDerivation{UrnParams(std::move(balls), c), a_scale, color0_ok};
}

// largest x with a + (x-1)c > 0, for c < 0
std::int64_t positive_chain_cap(std::int64_t a, std::int64_t c) {
  return (a - 1) / (-c) + 1;
}

double chain_product(std::int64_t a, std::int64_t c, std::int64_t len) {
  double p = 1.0;
  for (std::int64_t l = 1; l <= len; ++l)
    p *= static_cast<double>(a + (l - 1) * c);
  return p;
}

double log_chain(std::int64_t a, std::int64_t c, std::int64_t len) {
  double s = 0.0;
  for (std::int64_t l = 1; l <= len; ++l)
    s += std::log(static_cast<double>(a + (l - 1) * c));
  return s;
}

}  // namespace

UrnDerivation derive_urn(const MghParams& params, std::int64_t a_scale) {
  return derive_impl(params.weights(), params.total(), a_scale, 0);
}

UrnDerivation derive_urn(const MighParams& params, std::int64_t a_scale) {
  return derive_impl(params.weights(), params.total(), a_scale, params.gamma());
}

double pe_pmf(const UrnParams& urn, std::int64_t draws, std::span<const std::int64_t> x) {
  if (x.size() != urn.colors())
    throw Error(Errc::dimension_mismatch, "outcome has " + std::to_string(x.size()) +
                                              " entries, expected " + std::to_string(urn.colors()));
  if (draws < 1) throw Error(Errc::usage_error, "draw count must be positive");
  const std::int64_t c = urn.reinforcement();
  if (urn.total() + (draws - 1) * c <= 0)
    throw Error(Errc::infeasible_total, "a + (n-1)c must be positive");
  std::int64_t sum = 0;
  for (const std::int64_t xi : x) {
    if (xi < 0) throw Error(Errc::usage_error, "counts must be nonnegative");
    sum += xi;
  }
  if (sum != draws) return 0.0;
  const auto& a = urn.balls();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (x[i] > 0 && a[i] + (x[i] - 1) * c <= 0) return 0.0;

  double num = multinomial(x);
  for (std::size_t i = 0; i < a.size(); ++i) num *= chain_product(a[i], c, x[i]);
  const double den = chain_product(urn.total(), c, draws);
  if (std::isfinite(num) && std::isfinite(den) && den > 0.0) return num / den;

  double lg = log_multinomial(x);
  for (std::size_t i = 0; i < a.size(); ++i) lg += log_chain(a[i], c, x[i]);
  lg -= log_chain(urn.total(), c, draws);
  return std::exp(lg);
}

double ipe_pmf(const UrnParams& urn, std::int64_t gamma, std::span<const std::int64_t> x) {
  if (x.size() + 1 != urn.colors())
    throw Error(Errc::dimension_mismatch, "outcome has " + std::to_string(x.size()) +
                                              " entries, expected " + std::to_string(urn.colors() - 1));
  if (gamma < 1) throw Error(Errc::usage_error, "gamma must be positive");
  const std::int64_t c = urn.reinforcement();
  const auto& a = urn.balls();
  if (a[0] + c * (gamma - 1) <= 0)
    throw Error(Errc::infeasible_color_zero, "a_0 + c(gamma-1) must be positive");
  std::int64_t n = gamma;
  for (const std::int64_t xi : x) {
    if (xi < 0) throw Error(Errc::usage_error, "counts must be nonnegative");
    n += xi;
  }
  if (urn.total() + (n - 1) * c <= 0)
    throw Error(Errc::infeasible_total, "a + (n-1)c must be positive at n = " + std::to_string(n));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0 && a[i + 1] + (x[i] - 1) * c <= 0) return 0.0;

  std::vector<std::int64_t> full(urn.colors());
  full[0] = gamma;
  std::copy(x.begin(), x.end(), full.begin() + 1);

  double num = multinomial(full) * static_cast<double>(gamma) / static_cast<double>(n);
  for (std::size_t i = 0; i < a.size(); ++i) num *= chain_product(a[i], c, full[i]);
  const double den = chain_product(urn.total(), c, n);
  if (std::isfinite(num) && std::isfinite(den) && den > 0.0) return num / den;

  double lg = log_multinomial(full) + std::log(static_cast<double>(gamma)) -
              std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < a.size(); ++i) lg += log_chain(a[i], c, full[i]);
  lg -= log_chain(urn.total(), c, n);
  return std::exp(lg);
}

SupportSet pe_support(const UrnParams& urn, std::int64_t draws) {
  const std::int64_t c = urn.reinforcement();
  if (urn.total() + (draws - 1) * c <= 0)
    throw Error(Errc::infeasible_total, "a + (n-1)c must be positive");
  std::vector<std::int64_t> caps(urn.colors(), draws);
  if (c < 0)
    for (std::size_t i = 0; i < caps.size(); ++i)
      caps[i] = std::min(draws, positive_chain_cap(urn.balls()[i], c));
  SupportSet s;
  for_each_composition(draws, caps, [&](std::span<const std::int64_t> x) {
    s.outcomes.emplace_back(x.begin(), x.end());
    return true;
  });
  return s;
}

EnumerationStats for_each_ipe_mass(const UrnParams& urn, std::int64_t gamma, double tail_epsilon,
                                   const std::function<bool(std::span<const std::int64_t>, double)>& visit) {
  if (!(tail_epsilon >= 0.0) || tail_epsilon >= 1.0)
    throw Error(Errc::usage_error, "tail_epsilon must lie in [0, 1)");
  if (gamma < 1) throw Error(Errc::usage_error, "gamma must be positive");
  const std::int64_t c = urn.reinforcement();
  const auto& a = urn.balls();
  if (a[0] + c * (gamma - 1) <= 0)
    throw Error(Errc::infeasible_color_zero, "a_0 + c(gamma-1) must be positive");
  const bool finite = c < 0;
  if (!finite && tail_epsilon == 0.0)
    throw Error(Errc::tail_epsilon_zero_on_infinite_support,
                "c >= 0 gives an infinite support; a positive tail_epsilon is required");

  const std::size_t k = urn.colors() - 1;
  std::vector<std::int64_t> caps(k, 0);
  std::int64_t caps_sum = 0;
  std::int64_t n_max = -1;  // -1: unbounded
  if (finite) {
    for (std::size_t i = 0; i < k; ++i) {
      caps[i] = positive_chain_cap(a[i + 1], c);
      caps_sum += caps[i];
    }
    n_max = positive_chain_cap(urn.total(), c);
    if (n_max < gamma) throw Error(Errc::infeasible_total, "no draw count can reach gamma");
  }

  const double log_head = log_chain(a[0], c, gamma);
  double log_denom = log_chain(urn.total(), c, gamma);

  // cumulative log factorials and per-color log factor chains, grown lazily
  std::vector<double> lf{0.0};
  auto logfact = [&](std::int64_t v) {
    while (static_cast<std::int64_t>(lf.size()) <= v)
      lf.push_back(lf.back() + std::log(static_cast<double>(lf.size())));
    return lf[static_cast<std::size_t>(v)];
  };
  std::vector<std::vector<double>> lu(k, std::vector<double>{0.0});

  std::vector<std::int64_t> full(k + 1, 0);
  full[0] = gamma;

  EnumerationStats stats;
  bool stop = false;
  for (std::int64_t m = 0; !stop; ++m) {
    const std::int64_t n = gamma + m;
    if (finite && (n > n_max || m > caps_sum)) break;
    if (m > 0)
      log_denom += std::log(static_cast<double>(urn.total() + (n - 1) * c));

    std::vector<std::int64_t> level_caps(k);
    for (std::size_t i = 0; i < k; ++i) {
      level_caps[i] = finite ? std::min(caps[i], m) : m;
      auto& t = lu[i];
      while (static_cast<std::int64_t>(t.size()) <= level_caps[i]) {
        const auto x = static_cast<std::int64_t>(t.size());
        t.push_back(t.back() + std::log(static_cast<double>(a[i + 1] + (x - 1) * c)));
      }
    }

    const double level_log = std::log(static_cast<double>(gamma)) -
                             std::log(static_cast<double>(n)) + logfact(n) - logfact(gamma) +
                             log_head - log_denom;
    for_each_composition(m, level_caps, [&](std::span<const std::int64_t> x) {
      double lg = level_log;
      for (std::size_t i = 0; i < k; ++i) {
        lg += lu[i][static_cast<std::size_t>(x[i])];
        lg -= logfact(x[i]);
      }
      const double mass = std::exp(lg);
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

SupportSet ipe_support(const UrnParams& urn, std::int64_t gamma, double tail_epsilon) {
  SupportSet s;
  const EnumerationStats stats =
      for_each_ipe_mass(urn, gamma, tail_epsilon, [&](std::span<const std::int64_t> full, double) {
        s.outcomes.emplace_back(full.begin(), full.end());
        return true;
      });
  s.truncated = stats.truncated;
  s.tail_mass_bound = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  return s;
}

namespace {

struct LiveUrn {
  std::vector<std::int64_t> counts;
  std::vector<bool> active;
  std::int64_t pool;
  std::int64_t c;

  explicit LiveUrn(const UrnParams& urn)
      : counts(urn.balls()), active(urn.colors(), true), pool(urn.total()),
        c(urn.reinforcement()) {}

  void reset(const UrnParams& urn) {
    counts = urn.balls();
    std::fill(active.begin(), active.end(), true);
    pool = urn.total();
  }

  // one draw; returns the color, or -1 when the urn is empty
  std::int64_t draw(Rng& rng) {
    if (pool <= 0) return -1;
    std::int64_t t = uniform_below(rng, pool);
    std::size_t color = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (!active[i]) continue;
      if (t < counts[i]) {
        color = i;
        break;
      }
      t -= counts[i];
    }
    counts[color] += c;
    pool += c;
    if (counts[color] < -c) {  // fewer balls than the next removal step needs
      active[color] = false;
      pool -= counts[color];
    }
    return static_cast<std::int64_t>(color);
  }
};

}  // namespace

std::vector<Outcome> pe_sample(const UrnParams& urn, std::int64_t draws, std::uint64_t seed,
                               std::int64_t trials) {
  if (trials < 1) throw Error(Errc::usage_error, "trials must be positive");
  if (draws < 1) throw Error(Errc::usage_error, "draw count must be positive");
  if (urn.total() + (draws - 1) * urn.reinforcement() <= 0)
    throw Error(Errc::infeasible_total, "a + (n-1)c must be positive");
  Rng rng(seed);
  LiveUrn live(urn);
  std::vector<Outcome> result;
  result.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    live.reset(urn);
    Outcome tally(urn.colors(), 0);
    for (std::int64_t d = 0; d < draws; ++d) {
      const std::int64_t color = live.draw(rng);
      if (color < 0)
        throw Error(Errc::infeasible_total, "urn exhausted after " + std::to_string(d) +
                                                " draws in trial " + std::to_string(t));
      ++tally[static_cast<std::size_t>(color)];
    }
    result.push_back(std::move(tally));
  }
  return result;
}

std::vector<Outcome> ipe_sample(const UrnParams& urn, std::int64_t gamma, std::uint64_t seed,
                                std::int64_t trials, std::int64_t step_cap) {
  if (trials < 1) throw Error(Errc::usage_error, "trials must be positive");
  if (gamma < 1) throw Error(Errc::usage_error, "gamma must be positive");
  if (step_cap < 1) throw Error(Errc::usage_error, "step_cap must be positive");
  if (urn.balls()[0] + urn.reinforcement() * (gamma - 1) <= 0)
    throw Error(Errc::infeasible_color_zero, "a_0 + c(gamma-1) must be positive");
  Rng rng(seed);
  LiveUrn live(urn);
  std::vector<Outcome> result;
  result.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    live.reset(urn);
    Outcome tally(urn.colors(), 0);
    std::int64_t steps = 0;
    while (tally[0] < gamma) {
      if (++steps > step_cap)
        throw Error(Errc::step_cap_exceeded,
                    "trial " + std::to_string(t) + " exceeded " + std::to_string(step_cap) +
                        " draws");
      const std::int64_t color = live.draw(rng);
      if (color < 0)
        throw Error(Errc::infeasible_total,
                    "urn exhausted before gamma color-0 draws in trial " + std::to_string(t));
      ++tally[static_cast<std::size_t>(color)];
    }
    result.emplace_back(tally.begin() + 1, tally.end());
  }
  return result;
}

}  // namespace ghyper
