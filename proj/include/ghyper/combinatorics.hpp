#pragma once

#include <cstdint>
#include <span>

namespace ghyper {

/// Falling factorial t(t-1)...(t-k+1) for real t, integer k >= 0.
/// Empty product (k = 0) is 1. Evaluated as a direct product; switches to a
/// (sign, log-magnitude) representation if intermediates leave double range,
/// and throws Errc::range_error only when the final value itself overflows.
double falling_factorial(double t, std::int64_t k);

/// Binomial coefficient generalized to real t: falling_factorial(t,k) / k!.
/// Exactly 0 when t is a nonnegative integer below k; exact for integer
/// binomials while the result is representable.
double binomial(double t, std::int64_t k);

/// n! / (x_0! x_1! ... x_k!) with n = sum of the entries. Direct product of
/// integer binomials for n <= 60, log-space beyond.
double multinomial(std::span<const std::int64_t> counts);

/// log of multinomial(counts); does not overflow.
double log_multinomial(std::span<const std::int64_t> counts);

}  // namespace ghyper
