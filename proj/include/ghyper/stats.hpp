#pragma once

#include <cstdint>

namespace ghyper {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// absolute accuracy well below 1e-12.
double lower_regularized_gamma(double a, double x);

/// Q(a, x) = 1 - P(a, x).
double upper_regularized_gamma(double a, double x);

/// Survival function of the chi-square distribution: Q(dof/2, stat/2).
double chi_square_pvalue(double statistic, std::int64_t dof);

}  // namespace ghyper
