#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghyper/mgh.hpp"
#include "ghyper/migh.hpp"
#include "ghyper/types.hpp"
#include "ghyper/urn.hpp"

namespace ghyper {

enum class ReportKind { normalization, moments, convergence, gof };

struct ReportRow {
  std::string label;
  double expected;
  double observed;
  double deviation;
};

struct VerificationReport {
  ReportKind kind;
  std::vector<ReportRow> rows;
  bool pass;
  double tolerance;
};

const char* report_kind_name(ReportKind kind);

// --- normalization ---------------------------------------------------------
// Brute-force sum of the pmf over the enumerated support. Finite supports
// must reach 1 within tol; infinite supports must reach 1 - tail_epsilon
// with nonnegative masses throughout, and a sample of enumerated masses is
// cross-checked against the pointwise pmf.
VerificationReport verify_normalization(const MghParams& params, double tol);
VerificationReport verify_normalization(const MighParams& params, double tail_epsilon, double tol);
VerificationReport verify_pe_normalization(const UrnParams& urn, std::int64_t draws, double tol);
VerificationReport verify_ipe_normalization(const UrnParams& urn, std::int64_t gamma,
                                            double tail_epsilon, double tol);

// --- moments ----------------------------------------------------------------
// Enumeration moments against the closed forms, one row per coordinate;
// deviations are |observed - expected| / max(1, |expected|).
VerificationReport moment_check(const MghParams& params, double tol);
VerificationReport moment_check(const MighParams& params, double tail_epsilon, double tol);

// --- urn-limit convergence ---------------------------------------------------
// For each scale a: derive urn parameters, require the positive-mass set to
// equal the enumerated support (SupportMismatch otherwise, naming the first
// offending tuple), and record D(a) = max over the support of
// |urn pmf - distribution pmf|. Rows are (a, 0, D(a), D(a)); passes when the
// final D(a) <= tol and the sequence is nonincreasing up to 10% slack.
VerificationReport convergence_table(const MghParams& params, std::span<const std::int64_t> a_scales,
                                     double tol);
VerificationReport convergence_table(const MighParams& params, std::span<const std::int64_t> a_scales,
                                     double tail_epsilon, double tol);

/// True when the urn's positive-mass set equals the distribution's support,
/// compared tuple-by-tuple over the uncapped composition grid.
bool support_matches(const MghParams& params, const UrnDerivation& derivation);
bool support_matches(const MighParams& params, const UrnDerivation& derivation, double tail_epsilon);

/// Smallest feasible scale satisfying the derivation bounds.
std::int64_t min_feasible_scale(const MghParams& params);
std::int64_t min_feasible_scale(const MighParams& params);

/// Doubles the scale from the smallest feasible one until support equality
/// holds at two consecutive scales; returns the first of the pair. Throws
/// ScaleCapExceeded past 2^40.
std::int64_t stabilized_scale(const MghParams& params);
std::int64_t stabilized_scale(const MighParams& params, double tail_epsilon);

// --- goodness of fit ----------------------------------------------------------
/// Analytic bins for a chi-square test: outcomes in the sampler's outcome
/// space, their probabilities, and the mass of everything beyond (0 for
/// complete supports).
struct GofBins {
  std::vector<Outcome> outcomes;
  std::vector<double> probs;
  double tail_prob = 0.0;
};

GofBins gof_bins(const MghParams& params);
GofBins gof_bins(const MighParams& params, double tail_epsilon);
GofBins gof_bins_pe(const UrnParams& urn, std::int64_t draws);
GofBins gof_bins_ipe(const UrnParams& urn, std::int64_t gamma, double tail_epsilon);

/// Pearson chi-square of the draws against the bins. Bins with expected
/// count below 5 are pooled into a single bin. Requires
/// draws.size() >= 10 * (#bins) (InsufficientTrials). Passes when the
/// p-value is at least p_threshold.
VerificationReport gof_check(const GofBins& bins, const std::vector<Outcome>& draws,
                             double p_threshold = 1e-3);

}  // namespace ghyper
