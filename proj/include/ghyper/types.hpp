#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ghyper {

/// One support element: nonnegative counts per color.
using Outcome = std::vector<std::int64_t>;

/// Enumerated support. `truncated` is set when the support is infinite and
/// enumeration stopped once the accumulated mass reached 1 - tail_epsilon;
/// tail_mass_bound is then 1 - accumulated (0 for complete supports).
struct SupportSet {
  std::vector<Outcome> outcomes;
  bool truncated = false;
  double tail_mass_bound = 0.0;
};

/// Closed-form moments. `variances` is absent where no closed form exists
/// (the inverse distribution) or where the denominator vanishes (N = 1).
struct MomentReport {
  std::vector<double> means;
  std::optional<std::vector<double>> variances;
};

}  // namespace ghyper
