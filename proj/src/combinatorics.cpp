#include "ghyper/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "ghyper/errors.hpp"

namespace ghyper {
namespace {

constexpr std::int64_t kMaxOrder = 10000;
// log(DBL_MAX), with a hair of headroom
const double kMaxLog = std::log(std::numeric_limits<double>::max()) - 1e-9;

void check_order(std::int64_t k) {
  if (k < 0 || k > kMaxOrder)
    throw Error(Errc::usage_error, "order k must lie in [0, 10000], got " + std::to_string(k));
}

void check_finite(double t) {
  if (!std::isfinite(t)) throw Error(Errc::usage_error, "argument must be finite");
}

struct SignedLog {
  double log_abs;
  int sign;  // -1, 0, +1
};

SignedLog log_falling(double t, std::int64_t k) {
  SignedLog r{0.0, 1};
  for (std::int64_t l = 1; l <= k; ++l) {
    const double f = t - static_cast<double>(l - 1);
    if (f == 0.0) return {0.0, 0};
    r.log_abs += std::log(std::fabs(f));
    if (f < 0.0) r.sign = -r.sign;
  }
  return r;
}

double log_factorial(std::int64_t k) {
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double from_signed_log(const SignedLog& s, const char* who) {
  if (s.sign == 0) return 0.0;
  if (s.log_abs > kMaxLog)
    throw Error(Errc::range_error, std::string(who) + " overflows double range");
  return static_cast<double>(s.sign) * std::exp(s.log_abs);
}

bool is_integer_valued(double t) { return std::floor(t) == t; }

}  // namespace

double falling_factorial(double t, std::int64_t k) {
  check_finite(t);
  check_order(k);
  double prod = 1.0;
  for (std::int64_t l = 1; l <= k; ++l) {
    const double f = t - static_cast<double>(l - 1);
    if (f == 0.0) return 0.0;
    prod *= f;
    if (!std::isfinite(prod)) {
      SignedLog s = log_falling(t, k);
      return from_signed_log(s, "falling_factorial");
    }
  }
  return prod;
}

double binomial(double t, std::int64_t k) {
  check_finite(t);
  check_order(k);
  if (k == 0) return 1.0;

  if (is_integer_valued(t) && t >= 0.0) {
    if (t < static_cast<double>(k)) return 0.0;  // a zero factor in the product
    // every prefix of this loop is itself a binomial coefficient, so the
    // divisions stay exact while values are representable
    double r = 1.0;
    for (std::int64_t i = 1; i <= k; ++i)
      r = r * (t - static_cast<double>(k) + static_cast<double>(i)) / static_cast<double>(i);
    if (std::isfinite(r)) return r;
    throw Error(Errc::range_error, "binomial overflows double range");
  }

  double num = 1.0, den = 1.0;
  bool overflow = false;
  for (std::int64_t l = 1; l <= k; ++l) {
    num *= t - static_cast<double>(l - 1);
    den *= static_cast<double>(l);
    if (!std::isfinite(num) || !std::isfinite(den)) {
      overflow = true;
      break;
    }
  }
  if (!overflow) return num / den;

  SignedLog s = log_falling(t, k);
  if (s.sign == 0) return 0.0;
  s.log_abs -= log_factorial(k);
  return from_signed_log(s, "binomial");
}

double multinomial(std::span<const std::int64_t> counts) {
  if (counts.size() < 2)
    throw Error(Errc::usage_error, "multinomial needs at least two counts");
  std::int64_t n = 0;
  for (const std::int64_t c : counts) {
    if (c < 0) throw Error(Errc::usage_error, "multinomial counts must be nonnegative");
    n += c;
  }
  if (n <= 60) {
    // product of exact integer binomials over the partial sums
    double r = 1.0;
    std::int64_t s = 0;
    for (const std::int64_t c : counts) {
      s += c;
      r *= binomial(static_cast<double>(s), c);
    }
    return r;
  }
  const double lg = log_multinomial(counts);
  if (lg > kMaxLog) throw Error(Errc::range_error, "multinomial overflows double range");
  return std::exp(lg);
}

double log_multinomial(std::span<const std::int64_t> counts) {
  if (counts.size() < 2)
    throw Error(Errc::usage_error, "multinomial needs at least two counts");
  std::int64_t n = 0;
  double lg = 0.0;
  for (const std::int64_t c : counts) {
    if (c < 0) throw Error(Errc::usage_error, "multinomial counts must be nonnegative");
    n += c;
    lg -= log_factorial(c);
  }
  return lg + log_factorial(n);
}

}  // namespace ghyper
