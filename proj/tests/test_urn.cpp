#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ghyper/combinatorics.hpp"
#include "ghyper/errors.hpp"
#include "ghyper/enumerate.hpp"
#include "ghyper/urn.hpp"

using namespace ghyper;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::usage_error;
}

double int_pow(std::int64_t base, std::int64_t exp) {
  double r = 1.0;
  for (std::int64_t i = 0; i < exp; ++i) r *= static_cast<double>(base);
  return r;
}

}  // namespace

TEST_SUITE("urn") {

TEST_CASE("constructor policing") {
  CHECK_NOTHROW(UrnParams({1, 1}, 1));
  CHECK(code_of([] { UrnParams({1, 0}, 1); }) == Errc::non_positive_ball_count);
  CHECK(code_of([] { UrnParams({3}, -1); }) == Errc::length_error);
}

TEST_CASE("derivation from weights") {
  SUBCASE("positive non-integer weights") {
    const MghParams p({2.5, 2.5}, 2);
    const UrnDerivation d = derive_urn(p, 10);
    CHECK(d.urn.reinforcement() == -2);
    CHECK(d.urn.balls() == std::vector<std::int64_t>{5, 5});
    CHECK(d.color0_feasible);
  }
  SUBCASE("negative weights flip the reinforcement sign") {
    const MighParams p({-2.0, -3.0}, 2);
    const UrnDerivation d = derive_urn(p, 10);
    CHECK(d.urn.reinforcement() == 2);
    CHECK(d.urn.balls() == std::vector<std::int64_t>{4, 6});
  }
  SUBCASE("integer weights recover drawing without replacement") {
    const MghParams p({2.0, 3.0}, 2);
    const UrnDerivation d = derive_urn(p, 5);
    CHECK(d.urn.reinforcement() == -1);
    CHECK(d.urn.balls() == std::vector<std::int64_t>{2, 3});
  }
  SUBCASE("ceiling at a small negative ratio is zero") {
    // a/N = 3/-5 = -0.6, so c = -ceil(-0.6) = 0
    const MghParams p({-2.0, -3.0}, 2);
    const UrnDerivation d = derive_urn(p, 3);
    CHECK(d.urn.reinforcement() == 0);
    CHECK(d.urn.balls() == std::vector<std::int64_t>{2, 1});
  }
  SUBCASE("scale bound enforced") {
    const MghParams p({2.5, 2.5}, 2);
    CHECK(code_of([&] { derive_urn(p, 2); }) == Errc::scale_too_small);
  }
}

TEST_CASE("fixed-draw pmf") {
  const UrnParams grow({1, 1}, 1);
  CHECK(pe_pmf(grow, 2, Outcome{1, 1}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(pe_pmf(grow, 2, Outcome{2, 0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const UrnParams classical({2, 3}, -1);
  CHECK(pe_pmf(classical, 2, Outcome{1, 1}) == 0.6);
  CHECK(pe_pmf(classical, 3, Outcome{3, 0}) == 0.0);  // zero factor chain

  CHECK(code_of([&] { pe_pmf(classical, 6, Outcome{3, 3}); }) == Errc::infeasible_total);
  CHECK_THROWS_AS(pe_pmf(classical, 2, Outcome{1, 1, 0}), Error);
}

TEST_CASE("inverse pmf") {
  const UrnParams grow({1, 1}, 1);
  CHECK(ipe_pmf(grow, 1, Outcome{0}) == 0.5);
  CHECK(ipe_pmf(grow, 1, Outcome{1}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(ipe_pmf(grow, 1, Outcome{2}) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  const UrnParams drain({3, 1}, -1);
  CHECK(ipe_pmf(drain, 3, Outcome{0}) == 0.25);
  CHECK(ipe_pmf(drain, 3, Outcome{1}) == 0.75);

  CHECK(code_of([] {
          const UrnParams u({1, 1}, -1);
          return ipe_pmf(u, 2, Outcome{0});
        }) == Errc::infeasible_color_zero);
}

TEST_CASE("support respects the positivity chains") {
  const UrnParams u({5, 5}, -2);
  CHECK(pe_support(u, 2).outcomes.size() == 3);

  const UrnParams v({3, 5}, -2);
  const SupportSet s = pe_support(v, 3);
  REQUIRE(s.outcomes.size() == 3);  // x_0 <= 2
  CHECK(s.outcomes[0] == Outcome{0, 3});
  CHECK(s.outcomes[2] == Outcome{2, 1});

  const UrnParams inverse({3, 1}, -1);
  const SupportSet si = ipe_support(inverse, 3, 0.0);
  REQUIRE(si.outcomes.size() == 2);
  CHECK(si.outcomes[0] == Outcome{3, 0});
  CHECK(si.outcomes[1] == Outcome{3, 1});
  CHECK_FALSE(si.truncated);
}

TEST_CASE("weight embedding: urn pmf equals the generalized pmf") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t colors = 2 + rng() % 2;
    std::int64_t c = static_cast<std::int64_t>(1 + rng() % 3);
    if (rng() % 2 == 0) c = -c;
    std::vector<std::int64_t> balls;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < colors; ++i) {
      balls.push_back(static_cast<std::int64_t>(1 + rng() % 9));
      total += balls.back();
    }
    std::int64_t max_n = 8;
    if (c < 0) max_n = std::min<std::int64_t>(max_n, (total - 1) / (-c) + 1);
    if (max_n < 1) continue;
    const auto n = static_cast<std::int64_t>(1 + rng() % max_n);

    const UrnParams urn(balls, c);
    std::vector<double> weights;
    for (const auto b : balls) weights.push_back(-static_cast<double>(b) / static_cast<double>(c));
    const MghParams gen(weights, n);

    std::vector<std::int64_t> caps(colors, n);
    double worst = 0.0;
    for_each_composition(n, caps, [&](std::span<const std::int64_t> x) {
      worst = std::max(worst, std::fabs(pe_pmf(urn, n, x) - pmf(gen, x)));
      return true;
    });
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("inverse embedding matches as well") {
  const UrnParams urn({3, 2}, -1);
  const MighParams gen({3.0, 2.0}, 2);
  for (std::int64_t x1 = 0; x1 <= 2; ++x1)
    CHECK(ipe_pmf(urn, 2, Outcome{x1}) ==
          doctest::Approx(pmf(gen, Outcome{x1})).epsilon(1e-14));
}

TEST_CASE("zero reinforcement is the multinomial") {
  const UrnParams u({2, 3, 5}, 0);
  const std::int64_t n = 4;
  std::vector<std::int64_t> caps(3, n);
  for_each_composition(n, caps, [&](std::span<const std::int64_t> x) {
    double expected = multinomial(x);
    for (std::size_t i = 0; i < 3; ++i) expected *= int_pow(u.balls()[i], x[i]);
    expected /= int_pow(u.total(), n);
    CHECK(pe_pmf(u, n, x) == expected);
    return true;
  });
}

TEST_CASE("streamed inverse masses agree with ipe_pmf") {
  const UrnParams u({2, 1}, 1);
  double worst = 0.0;
  for_each_ipe_mass(u, 2, 1e-3, [&](std::span<const std::int64_t> full, double mass) {
    worst = std::max(worst, std::fabs(mass - ipe_pmf(u, 2, full.subspan(1))));
    return true;
  });
  CHECK(worst < 1e-12);
}

TEST_CASE("fixed-draw sampler") {
  SUBCASE("exhaustive draw is deterministic") {
    const UrnParams u({2, 3}, -1);
    for (const Outcome& x : pe_sample(u, 5, 7, 40)) CHECK(x == Outcome{2, 3});
  }
  SUBCASE("reinforced urn frequencies") {
    const UrnParams u({1, 1}, 1);
    const auto draws = pe_sample(u, 2, 123, 100000);
    std::int64_t hits = 0;
    for (const Outcome& x : draws) hits += x == Outcome{1, 1} ? 1 : 0;
    const double prob = 1.0 / 3.0;
    const double sigma = std::sqrt(prob * (1.0 - prob) / 100000.0);
    CHECK(std::fabs(static_cast<double>(hits) / 100000.0 - prob) <= 3.0 * sigma);
  }
  SUBCASE("determinism") {
    const UrnParams u({5, 5}, -2);
    CHECK(pe_sample(u, 2, 31, 500) == pe_sample(u, 2, 31, 500));
  }
}

TEST_CASE("stopping sampler") {
  SUBCASE("frequencies at gamma accuracy") {
    const UrnParams u({1, 1}, 1);
    const auto draws = ipe_sample(u, 1, 321, 100000, 10'000'000);
    std::int64_t zeros = 0;
    for (const Outcome& x : draws) zeros += x[0] == 0 ? 1 : 0;
    const double sigma = std::sqrt(0.25 / 100000.0);
    CHECK(std::fabs(static_cast<double>(zeros) / 100000.0 - 0.5) <= 3.0 * sigma);
  }
  SUBCASE("bounded support case matches the pmf") {
    const UrnParams u({3, 1}, -1);
    const auto draws = ipe_sample(u, 3, 11, 100000);
    std::int64_t ones = 0;
    for (const Outcome& x : draws) {
      CHECK((x[0] == 0 || x[0] == 1));
      ones += x[0];
    }
    const double sigma = std::sqrt(0.75 * 0.25 / 100000.0);
    CHECK(std::fabs(static_cast<double>(ones) / 100000.0 - 0.75) <= 3.0 * sigma);
  }
  SUBCASE("step cap is reported") {
    const UrnParams u({1, 1}, 1);
    CHECK(code_of([&] { ipe_sample(u, 2, 5, 100, 1); }) == Errc::step_cap_exceeded);
  }
  SUBCASE("determinism") {
    const UrnParams u({3, 1}, -1);
    CHECK(ipe_sample(u, 3, 13, 500) == ipe_sample(u, 3, 13, 500));
  }
}

}  // TEST_SUITE
