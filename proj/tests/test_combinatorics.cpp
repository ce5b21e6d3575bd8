#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ghyper/combinatorics.hpp"
#include "ghyper/errors.hpp"

using namespace ghyper;

namespace {

// exact binomial table via Pascal's rule in 128-bit integers
double exact_binomial(int m, int kk) {
  static std::vector<std::vector<unsigned __int128>> table = [] {
    std::vector<std::vector<unsigned __int128>> t(51);
    for (int i = 0; i <= 50; ++i) {
      t[i].resize(i + 1);
      t[i][0] = t[i][i] = 1;
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (kk > m) return 0.0;
  return static_cast<double>(table[m][kk]);
}

double mixed_tol_gap(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_SUITE("combinatorics") {

TEST_CASE("falling factorial matches direct products") {
  CHECK(falling_factorial(4.5, 0) == 1.0);
  CHECK(falling_factorial(-2.0, 3) == -24.0);
  CHECK(falling_factorial(2.5, 4) == -0.9375);
  CHECK(falling_factorial(7.0, 3) == 210.0);
  CHECK(falling_factorial(3.0, 5) == 0.0);  // zero factor at t-3
}

TEST_CASE("falling factorial sign for negative t is (-1)^k") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(-30.0, -0.01);
  for (int trial = 0; trial < 500; ++trial) {
    const double t = t_dist(rng);
    const auto k = static_cast<std::int64_t>(rng() % 20);
    const double v = falling_factorial(t, k);
    const double expected_sign = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(v * expected_sign > 0.0);
  }
}

TEST_CASE("binomial basics") {
  CHECK(binomial(3.7, 0) == 1.0);
  CHECK(binomial(-11.0, 0) == 1.0);
  CHECK(binomial(5.0, 2) == 10.0);
  CHECK(binomial(-2.0, 3) == -4.0);
  CHECK(binomial(2.5, 2) == 1.875);
  CHECK(binomial(2.0, 5) == 0.0);
  CHECK(binomial(0.0, 0) == 1.0);
}

TEST_CASE("integer binomials are exact") {
  for (int m = 0; m <= 50; ++m)
    for (int kk = 0; kk <= m; ++kk)
      CHECK(binomial(static_cast<double>(m), kk) == exact_binomial(m, kk));
}

TEST_CASE("pascal recurrence over random real arguments") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t_dist(-20.0, 20.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double t = t_dist(rng);
    const auto k = static_cast<std::int64_t>(1 + rng() % 30);
    const double lhs = binomial(t, k);
    const double rhs = binomial(t - 1.0, k - 1) + binomial(t - 1.0, k);
    CHECK(mixed_tol_gap(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("multinomial small cases") {
  const std::array<std::int64_t, 2> two{1, 1};
  CHECK(multinomial(two) == 2.0);
  const std::array<std::int64_t, 2> edge{0, 9};
  CHECK(multinomial(edge) == 1.0);
  const std::array<std::int64_t, 3> three{2, 1, 1};
  CHECK(multinomial(three) == 12.0);
}

TEST_CASE("multinomial equals product of successive binomials") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t parts = 2 + rng() % 3;
    std::vector<std::int64_t> x(parts);
    for (auto& v : x) v = static_cast<std::int64_t>(rng() % 8);
    double expected = 1.0;
    std::int64_t s = 0;
    for (const auto v : x) {
      s += v;
      expected *= binomial(static_cast<double>(s), v);
    }
    CHECK(multinomial(x) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("multinomial log path agrees with the direct path") {
  // straddle the n = 60 switch
  const std::vector<std::int64_t> a{30, 29};   // n = 59, direct
  const std::vector<std::int64_t> b{40, 40};   // n = 80, log space
  CHECK(multinomial(a) == doctest::Approx(std::exp(log_multinomial(a))).epsilon(1e-11));
  double direct = 1.0;
  std::int64_t s = 0;
  for (const auto v : b) {
    s += v;
    direct *= binomial(static_cast<double>(s), v);
  }
  CHECK(multinomial(b) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("argument policing") {
  CHECK_THROWS_AS(falling_factorial(1.0, -1), Error);
  CHECK_THROWS_AS(falling_factorial(1.0, 10001), Error);
  CHECK_THROWS_AS(falling_factorial(std::numeric_limits<double>::infinity(), 2), Error);
  CHECK_THROWS_AS(binomial(std::nan(""), 2), Error);
  const std::vector<std::int64_t> one{3};
  CHECK_THROWS_AS(multinomial(one), Error);
  const std::vector<std::int64_t> neg{2, -1};
  CHECK_THROWS_AS(multinomial(neg), Error);
}

TEST_CASE("overflow policy") {
  // intermediate magnitudes blow past double range, the result does not
  const double v = binomial(-2.0, 400);  // (-1)^400 * 401
  CHECK(v == doctest::Approx(401.0).epsilon(1e-12));
  // the value itself overflows
  CHECK_THROWS_AS(falling_factorial(5000.5, 300), Error);
}

}  // TEST_SUITE
