#include "ghyper/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ghyper/enumerate.hpp"
#include "ghyper/errors.hpp"
#include "ghyper/stats.hpp"

namespace ghyper {

const char* report_kind_name(ReportKind kind) {
  switch (kind) {
    case ReportKind::normalization: return "normalization";
    case ReportKind::moments: return "moments";
    case ReportKind::convergence: return "convergence";
    case ReportKind::gof: return "gof";
  }
  return "unknown";
}

namespace {

constexpr std::int64_t kScaleCap = std::int64_t{1} << 40;
constexpr std::size_t kCrossCheckTuples = 200;

double scaled_dev(double expected, double observed) {
  return std::fabs(observed - expected) / std::max(1.0, std::fabs(expected));
}

bool rows_within(const std::vector<ReportRow>& rows, double tol) {
  return std::all_of(rows.begin(), rows.end(),
                     [tol](const ReportRow& r) { return std::fabs(r.deviation) <= tol; });
}

std::string tuple_string(std::span<const std::int64_t> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// normalization
// ---------------------------------------------------------------------------

VerificationReport verify_normalization(const MghParams& params, double tol) {
  VerificationReport report{ReportKind::normalization, {}, false, tol};
  const SupportSet s = support(params);
  double sum = 0.0;
  double worst_negative = 0.0;
  for (const Outcome& x : s.outcomes) {
    const double p = pmf(params, x);
    sum += p;
    worst_negative = std::min(worst_negative, p);
  }
  report.rows.push_back({"sum", 1.0, sum, sum - 1.0});
  report.rows.push_back({"negative_mass", 0.0, -worst_negative, -worst_negative});
  report.pass = rows_within(report.rows, tol);
  return report;
}

VerificationReport verify_normalization(const MighParams& params, double tail_epsilon, double tol) {
  VerificationReport report{ReportKind::normalization, {}, false, tol};
  double worst_negative = 0.0;
  double cross_check = 0.0;
  std::size_t seen = 0;
  const EnumerationStats stats = for_each_mass(
      params, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
        worst_negative = std::min(worst_negative, mass);
        if (seen++ < kCrossCheckTuples)
          cross_check = std::max(cross_check, std::fabs(mass - pmf(params, full.subspan(1))));
        return true;
      });
  if (params.infinite_support()) {
    const double shortfall = std::max(0.0, (1.0 - tail_epsilon) - stats.accumulated);
    report.rows.push_back({"accumulated_shortfall", 0.0, shortfall, shortfall});
  } else {
    report.rows.push_back({"sum", 1.0, stats.accumulated, stats.accumulated - 1.0});
  }
  report.rows.push_back({"negative_mass", 0.0, -worst_negative, -worst_negative});
  report.rows.push_back({"pmf_cross_check", 0.0, cross_check, cross_check});
  report.pass = rows_within(report.rows, tol);
  return report;
}

VerificationReport verify_pe_normalization(const UrnParams& urn, std::int64_t draws, double tol) {
  VerificationReport report{ReportKind::normalization, {}, false, tol};
  // brute force over the whole composition grid; pe_pmf is 0 off-support
  std::vector<std::int64_t> caps(urn.colors(), draws);
  double sum = 0.0;
  double worst_negative = 0.0;
  for_each_composition(draws, caps, [&](std::span<const std::int64_t> x) {
    const double p = pe_pmf(urn, draws, x);
    sum += p;
    worst_negative = std::min(worst_negative, p);
    return true;
  });
  report.rows.push_back({"sum", 1.0, sum, sum - 1.0});
  report.rows.push_back({"negative_mass", 0.0, -worst_negative, -worst_negative});
  report.pass = rows_within(report.rows, tol);
  return report;
}

VerificationReport verify_ipe_normalization(const UrnParams& urn, std::int64_t gamma,
                                            double tail_epsilon, double tol) {
  VerificationReport report{ReportKind::normalization, {}, false, tol};
  double worst_negative = 0.0;
  double cross_check = 0.0;
  std::size_t seen = 0;
  const EnumerationStats stats = for_each_ipe_mass(
      urn, gamma, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
        worst_negative = std::min(worst_negative, mass);
        if (seen++ < kCrossCheckTuples)
          cross_check = std::max(cross_check, std::fabs(mass - ipe_pmf(urn, gamma, full.subspan(1))));
        return true;
      });
  if (urn.reinforcement() >= 0) {
    const double shortfall = std::max(0.0, (1.0 - tail_epsilon) - stats.accumulated);
    report.rows.push_back({"accumulated_shortfall", 0.0, shortfall, shortfall});
  } else {
    report.rows.push_back({"sum", 1.0, stats.accumulated, stats.accumulated - 1.0});
  }
  report.rows.push_back({"negative_mass", 0.0, -worst_negative, -worst_negative});
  report.rows.push_back({"pmf_cross_check", 0.0, cross_check, cross_check});
  report.pass = rows_within(report.rows, tol);
  return report;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

VerificationReport moment_check(const MghParams& params, double tol) {
  VerificationReport report{ReportKind::moments, {}, false, tol};
  const std::size_t colors = params.colors();
  std::vector<double> ex(colors, 0.0), ex2(colors, 0.0);
  const SupportSet s = support(params);
  for (const Outcome& x : s.outcomes) {
    const double p = pmf(params, x);
    for (std::size_t i = 0; i < colors; ++i) {
      const auto xi = static_cast<double>(x[i]);
      ex[i] += xi * p;
      ex2[i] += xi * xi * p;
    }
  }
  const MomentReport closed = moments(params);
  for (std::size_t i = 0; i < colors; ++i)
    report.rows.push_back(
        {"mean[" + std::to_string(i) + "]", closed.means[i], ex[i], scaled_dev(closed.means[i], ex[i])});
  if (closed.variances) {
    for (std::size_t i = 0; i < colors; ++i) {
      const double v = ex2[i] - ex[i] * ex[i];
      report.rows.push_back({"var[" + std::to_string(i) + "]", (*closed.variances)[i], v,
                             scaled_dev((*closed.variances)[i], v)});
    }
  }
  report.pass = rows_within(report.rows, tol);
  return report;
}

VerificationReport moment_check(const MighParams& params, double tail_epsilon, double tol) {
  VerificationReport report{ReportKind::moments, {}, false, tol};
  const std::size_t k = params.colors() - 1;
  std::vector<double> ex(k, 0.0);
  for_each_mass(params, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
    for (std::size_t i = 0; i < k; ++i) ex[i] += static_cast<double>(full[i + 1]) * mass;
    return true;
  });
  const MomentReport closed = mean(params);
  for (std::size_t i = 0; i < k; ++i)
    report.rows.push_back({"mean[" + std::to_string(i + 1) + "]", closed.means[i], ex[i],
                           scaled_dev(closed.means[i], ex[i])});
  report.pass = rows_within(report.rows, tol);
  return report;
}

// ---------------------------------------------------------------------------
// urn-limit convergence
// ---------------------------------------------------------------------------

namespace {

// first tuple (if any) where the urn's positive-mass indicator disagrees with
// the distribution's support indicator, compared over the uncapped grid
std::optional<Outcome> first_support_mismatch(const MghParams& params, const UrnDerivation& d) {
  const std::int64_t n = params.draws();
  if (d.urn.total() + (n - 1) * d.urn.reinforcement() <= 0) {
    // the urn cannot run n draws at all; any support tuple is a mismatch
    const SupportSet s = support(params);
    return s.outcomes.front();
  }
  std::optional<Outcome> bad;
  std::vector<std::int64_t> caps(params.colors(), n);
  for_each_composition(n, caps, [&](std::span<const std::int64_t> x) {
    const bool in_dist = pmf(params, x) > 0.0;
    const bool in_urn = pe_pmf(d.urn, n, x) > 0.0;
    if (in_dist != in_urn) {
      bad = Outcome(x.begin(), x.end());
      return false;
    }
    return true;
  });
  return bad;
}

std::optional<Outcome> first_support_mismatch(const MighParams& params, const UrnDerivation& d,
                                              double tail_epsilon) {
  const double N = params.total();
  const std::int64_t gamma = params.gamma();
  const std::size_t k = params.colors() - 1;
  std::optional<Outcome> bad;
  if (N > 0.0) {
    for (std::int64_t n = gamma; static_cast<double>(n - 1) < N && !bad; ++n) {
      const std::int64_t m = n - gamma;
      std::vector<std::int64_t> caps(k, m);
      for_each_composition(m, caps, [&](std::span<const std::int64_t> x) {
        const bool in_dist = pmf(params, x) > 0.0;
        bool in_urn = false;
        try {
          in_urn = ipe_pmf(d.urn, gamma, x) > 0.0;
        } catch (const Error& e) {
          if (e.code() != Errc::infeasible_total) throw;
        }
        if (in_dist != in_urn) {
          bad = Outcome(x.begin(), x.end());
          return false;
        }
        return true;
      });
    }
    return bad;
  }
  // N < 0: both sides are uncapped; verify over the truncated set
  for_each_mass(params, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
    bool in_urn = false;
    try {
      in_urn = ipe_pmf(d.urn, gamma, full.subspan(1)) > 0.0;
    } catch (const Error& e) {
      if (e.code() != Errc::infeasible_total) throw;
    }
    if ((mass > 0.0) != in_urn) {
      bad = Outcome(full.begin() + 1, full.end());
      return false;
    }
    return true;
  });
  return bad;
}

bool convergence_pass(const std::vector<ReportRow>& rows, double tol) {
  if (rows.empty()) return false;
  if (rows.back().observed > tol) return false;
  for (std::size_t j = 0; j + 1 < rows.size(); ++j)
    if (rows[j + 1].observed > 1.1 * rows[j].observed + 1e-15) return false;
  return true;
}

}  // namespace

bool support_matches(const MghParams& params, const UrnDerivation& derivation) {
  return !first_support_mismatch(params, derivation).has_value();
}

bool support_matches(const MighParams& params, const UrnDerivation& derivation,
                     double tail_epsilon) {
  if (!derivation.color0_feasible) return false;
  return !first_support_mismatch(params, derivation, tail_epsilon).has_value();
}

VerificationReport convergence_table(const MghParams& params,
                                     std::span<const std::int64_t> a_scales, double tol) {
  VerificationReport report{ReportKind::convergence, {}, false, tol};
  const SupportSet s = support(params);
  for (const std::int64_t a : a_scales) {
    const UrnDerivation d = derive_urn(params, a);
    if (auto bad = first_support_mismatch(params, d))
      throw Error(Errc::support_mismatch, "a_scale " + std::to_string(a) +
                                              " disagrees at tuple " + tuple_string(*bad));
    double worst = 0.0;
    for (const Outcome& x : s.outcomes)
      worst = std::max(worst, std::fabs(pe_pmf(d.urn, params.draws(), x) - pmf(params, x)));
    report.rows.push_back({std::to_string(a), 0.0, worst, worst});
  }
  report.pass = convergence_pass(report.rows, tol);
  return report;
}

VerificationReport convergence_table(const MighParams& params,
                                     std::span<const std::int64_t> a_scales, double tail_epsilon,
                                     double tol) {
  VerificationReport report{ReportKind::convergence, {}, false, tol};
  const SupportSet s = support(params, tail_epsilon);
  for (const std::int64_t a : a_scales) {
    const UrnDerivation d = derive_urn(params, a);
    if (!d.color0_feasible)
      throw Error(Errc::infeasible_color_zero,
                  "a_scale " + std::to_string(a) + " gives a_0 + (gamma-1)c <= 0");
    if (auto bad = first_support_mismatch(params, d, tail_epsilon))
      throw Error(Errc::support_mismatch, "a_scale " + std::to_string(a) +
                                              " disagrees at tuple " + tuple_string(*bad));
    double worst = 0.0;
    for (const Outcome& full : s.outcomes) {
      const std::span<const std::int64_t> suffix(full.data() + 1, full.size() - 1);
      worst = std::max(worst, std::fabs(ipe_pmf(d.urn, params.gamma(), suffix) - pmf(params, suffix)));
    }
    report.rows.push_back({std::to_string(a), 0.0, worst, worst});
  }
  report.pass = convergence_pass(report.rows, tol);
  return report;
}

// ---------------------------------------------------------------------------
// scale search
// ---------------------------------------------------------------------------

namespace {

std::int64_t scale_lower_bound(const std::vector<double>& C, double N, std::int64_t max_draws) {
  std::int64_t lo = 1;
  for (std::size_t i = 1; i < C.size(); ++i) {
    const double bound = N / C[i];
    lo = std::max(lo, static_cast<std::int64_t>(std::floor(bound)) + 1);
  }
  if (N > 0.0 && max_draws > 1) {
    const double frac = 1.0 - static_cast<double>(max_draws - 1) / N;
    const double bound = static_cast<double>(max_draws - 1) / frac;
    lo = std::max(lo, static_cast<std::int64_t>(std::floor(bound)) + 1);
  }
  return lo;
}

template <typename Matches>
std::int64_t doubled_stable_scale(std::int64_t start, Matches&& matches) {
  std::int64_t s = start;
  bool eq = matches(s);
  while (true) {
    if (s > kScaleCap)
      throw Error(Errc::scale_cap_exceeded, "no stable scale found below 2^40");
    const std::int64_t next = s * 2;
    const bool eq_next = matches(next);
    if (eq && eq_next) return s;
    s = next;
    eq = eq_next;
  }
}

}  // namespace

std::int64_t min_feasible_scale(const MghParams& params) {
  return scale_lower_bound(params.weights(), params.total(), params.draws());
}

std::int64_t min_feasible_scale(const MighParams& params) {
  std::int64_t max_draws = params.gamma();
  if (params.total() > 0.0) {
    // largest draw count on the support: (n-1)/N < 1
    max_draws = params.gamma();
    while (static_cast<double>(max_draws) < params.total()) ++max_draws;
  }
  return scale_lower_bound(params.weights(), params.total(), max_draws);
}

std::int64_t stabilized_scale(const MghParams& params) {
  return doubled_stable_scale(min_feasible_scale(params), [&](std::int64_t s) {
    return support_matches(params, derive_urn(params, s));
  });
}

std::int64_t stabilized_scale(const MighParams& params, double tail_epsilon) {
  return doubled_stable_scale(min_feasible_scale(params), [&](std::int64_t s) {
    return support_matches(params, derive_urn(params, s), tail_epsilon);
  });
}

// ---------------------------------------------------------------------------
// goodness of fit
// ---------------------------------------------------------------------------

GofBins gof_bins(const MghParams& params) {
  GofBins bins;
  const SupportSet s = support(params);
  for (const Outcome& x : s.outcomes) {
    bins.outcomes.push_back(x);
    bins.probs.push_back(pmf(params, x));
  }
  return bins;
}

GofBins gof_bins(const MighParams& params, double tail_epsilon) {
  GofBins bins;
  const EnumerationStats stats =
      for_each_mass(params, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
        bins.outcomes.emplace_back(full.begin() + 1, full.end());
        bins.probs.push_back(mass);
        return true;
      });
  bins.tail_prob = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  return bins;
}

GofBins gof_bins_pe(const UrnParams& urn, std::int64_t draws) {
  GofBins bins;
  const SupportSet s = pe_support(urn, draws);
  for (const Outcome& x : s.outcomes) {
    bins.outcomes.push_back(x);
    bins.probs.push_back(pe_pmf(urn, draws, x));
  }
  return bins;
}

GofBins gof_bins_ipe(const UrnParams& urn, std::int64_t gamma, double tail_epsilon) {
  GofBins bins;
  const EnumerationStats stats =
      for_each_ipe_mass(urn, gamma, tail_epsilon, [&](std::span<const std::int64_t> full, double mass) {
        bins.outcomes.emplace_back(full.begin() + 1, full.end());
        bins.probs.push_back(mass);
        return true;
      });
  bins.tail_prob = stats.truncated ? 1.0 - stats.accumulated : 0.0;
  return bins;
}

VerificationReport gof_check(const GofBins& bins, const std::vector<Outcome>& draws,
                             double p_threshold) {
  VerificationReport report{ReportKind::gof, {}, false, 0.0};
  const auto trials = static_cast<std::int64_t>(draws.size());
  const bool has_tail = bins.tail_prob > 0.0;
  const std::size_t nbins = bins.outcomes.size() + (has_tail ? 1 : 0);
  if (trials < 10 * static_cast<std::int64_t>(nbins))
    throw Error(Errc::insufficient_trials,
                std::to_string(trials) + " draws for " + std::to_string(nbins) + " bins");

  std::map<Outcome, std::size_t> index;
  for (std::size_t i = 0; i < bins.outcomes.size(); ++i) index.emplace(bins.outcomes[i], i);
  std::vector<std::int64_t> observed(nbins, 0);
  std::int64_t off_support = 0;
  for (const Outcome& x : draws) {
    const auto it = index.find(x);
    if (it != index.end())
      ++observed[it->second];
    else if (has_tail)
      ++observed[nbins - 1];
    else
      ++off_support;
  }

  // pool bins with expected count below 5 into one
  double statistic = 0.0;
  std::int64_t cells = 0;
  double pooled_expected = 0.0;
  std::int64_t pooled_observed = 0;
  for (std::size_t i = 0; i < nbins; ++i) {
    const double prob = i < bins.outcomes.size() ? bins.probs[i] : bins.tail_prob;
    const double expected = prob * static_cast<double>(trials);
    if (expected >= 5.0) {
      const double diff = static_cast<double>(observed[i]) - expected;
      statistic += diff * diff / expected;
      ++cells;
    } else {
      pooled_expected += expected;
      pooled_observed += observed[i];
    }
  }
  if (pooled_expected > 0.0 || pooled_observed > 0) {
    const double diff = static_cast<double>(pooled_observed) - pooled_expected;
    statistic += pooled_expected > 0.0 ? diff * diff / pooled_expected
                                       : std::numeric_limits<double>::infinity();
    ++cells;
  }

  double p_value;
  if (off_support > 0) {
    p_value = 0.0;
    report.rows.push_back({"off_support_draws", 0.0, static_cast<double>(off_support),
                           static_cast<double>(off_support)});
  } else if (cells < 2) {
    // degenerate (single-cell) support: every draw landed where it must
    statistic = 0.0;
    p_value = 1.0;
  } else {
    p_value = chi_square_pvalue(statistic, cells - 1);
  }

  report.rows.push_back({"statistic", 0.0, statistic, 0.0});
  report.rows.push_back({"cells", static_cast<double>(cells), static_cast<double>(cells), 0.0});
  report.rows.push_back({"p_value", p_threshold, p_value, std::max(0.0, p_threshold - p_value)});
  report.pass = rows_within(report.rows, report.tolerance);
  return report;
}

}  // namespace ghyper
