#include <doctest.h>

#include <cmath>
#include <vector>

#include "ghyper/errors.hpp"
#include "ghyper/oracle.hpp"

using namespace ghyper;

namespace {

const ReportRow& row(const VerificationReport& r, const std::string& label) {
  for (const ReportRow& candidate : r.rows)
    if (candidate.label == label) return candidate;
  FAIL("missing row ", label);
  return r.rows.front();
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("normalization reports") {
  SUBCASE("real-weight support sums to one") {
    const MghParams p({2.5, 2.5}, 2);
    const VerificationReport r = verify_normalization(p, 1e-12);
    CHECK(r.pass);
    CHECK(row(r, "sum").observed == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("urn law sums to one") {
    const UrnParams u({1, 1}, 1);
    const VerificationReport r = verify_pe_normalization(u, 3, 1e-12);
    CHECK(r.pass);
  }
  SUBCASE("truncated inverse enumeration reaches its target") {
    const MighParams p({-1.0, -1.0}, 1);
    const VerificationReport r = verify_normalization(p, 1e-6, 1e-9);
    CHECK(r.pass);
    CHECK(row(r, "accumulated_shortfall").observed == 0.0);
    CHECK(row(r, "negative_mass").observed == 0.0);
  }
  SUBCASE("the harness reports genuine defects") {
    // outside the sound regime the capped sum is not 1; the deviation is
    // exactly 1/64 here, and the report must say so rather than pass
    const MghParams p({1.5, 2.5}, 3);
    const VerificationReport r = verify_normalization(p, 1e-9);
    CHECK_FALSE(r.pass);
    CHECK(row(r, "sum").observed == doctest::Approx(65.0 / 64.0).epsilon(1e-13));
  }
}

TEST_CASE("moment reports") {
  SUBCASE("forward distribution") {
    const VerificationReport r = moment_check(MghParams({2.5, 2.5}, 2), 1e-10);
    CHECK(r.pass);
    const VerificationReport r2 = moment_check(MghParams({2.0, 3.0, 5.0}, 4), 1e-10);
    CHECK(r2.pass);
    CHECK(row(r2, "mean[0]").expected == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(row(r2, "mean[1]").expected == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(row(r2, "mean[2]").expected == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("inverse distribution, complete support") {
    const VerificationReport r = moment_check(MighParams({1.0, 1.0}, 1), 0.0, 1e-10);
    CHECK(r.pass);
    CHECK(row(r, "mean[1]").expected == 0.5);
  }
  SUBCASE("inverse distribution, truncated support") {
    const VerificationReport r = moment_check(MighParams({-4.0, -3.0}, 2), 1e-12, 1e-8);
    CHECK(r.pass);
    CHECK(row(r, "mean[1]").expected == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("convergence tables") {
  SUBCASE("declared scale ladder") {
    const MghParams p({2.5, 2.5}, 2);
    const std::vector<std::int64_t> scales{10, 100, 1000, 10000};
    const VerificationReport r = convergence_table(p, scales, 1e-3);
    CHECK(r.pass);
    CHECK(r.rows.size() == 4);
    CHECK(r.rows.back().observed <= 1e-3);
  }
  SUBCASE("integer parameters are exact at the natural scale") {
    const MghParams p({2.0, 3.0}, 2);
    const std::vector<std::int64_t> scales{5};
    const VerificationReport r = convergence_table(p, scales, 1e-3);
    CHECK(r.pass);
    CHECK(r.rows[0].observed == 0.0);  // bitwise zero deviation
  }
  SUBCASE("awkward scales decay roughly linearly") {
    const MghParams p({2.5, 2.5}, 2);
    const std::vector<std::int64_t> scales{7, 77, 777, 7777};
    const VerificationReport r = convergence_table(p, scales, 1e-3);
    CHECK(r.pass);
    CHECK(r.rows[0].observed > 1e-3);  // genuinely nonzero at the start
    // two decades shrink the deviation at least tenfold, with 3x slack
    CHECK(r.rows[2].observed <= 0.3 * r.rows[0].observed);
    CHECK(r.rows[3].observed <= 0.3 * r.rows[1].observed);
  }
  SUBCASE("inverse case on a truncated set") {
    const MighParams p({-2.0, -3.0}, 2);
    const std::vector<std::int64_t> scales{10, 100, 1000};
    const VerificationReport r = convergence_table(p, scales, 1e-6, 1e-3);
    CHECK(r.pass);
  }
  SUBCASE("scales below the support threshold are flagged") {
    const MghParams p({2.5, 2.5}, 2);
    const std::vector<std::int64_t> scales{3};
    CHECK_THROWS_AS(convergence_table(p, scales, 1e-3), Error);
    try {
      convergence_table(p, scales, 1e-3);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::support_mismatch);
    }
  }
}

TEST_CASE("scale doubling stabilizes") {
  SUBCASE("forward") {
    const MghParams p({2.5, 2.5}, 2);
    const std::int64_t s = stabilized_scale(p);
    CHECK(s == 6);
    CHECK(support_matches(p, derive_urn(p, s)));
    CHECK(support_matches(p, derive_urn(p, 2 * s)));
  }
  SUBCASE("inverse, finite support") {
    const MighParams p({1.5, 1.0}, 1);
    const std::int64_t s = stabilized_scale(p, 1e-6);
    CHECK(support_matches(p, derive_urn(p, s), 1e-6));
    CHECK(support_matches(p, derive_urn(p, 2 * s), 1e-6));
  }
  SUBCASE("inverse, infinite support") {
    const MighParams p({-3.5, -2.0}, 2);
    const std::int64_t s = stabilized_scale(p, 1e-6);
    CHECK(support_matches(p, derive_urn(p, s), 1e-6));
  }
}

TEST_CASE("goodness of fit") {
  SUBCASE("growing urn passes against its own law") {
    const UrnParams u({1, 1}, 1);
    const GofBins bins = gof_bins_pe(u, 2);
    const VerificationReport r = gof_check(bins, pe_sample(u, 2, 2025, 100000));
    CHECK(r.pass);
    CHECK(row(r, "p_value").observed >= 1e-3);
  }
  SUBCASE("real-weight sampler passes") {
    const MghParams p({2.5, 2.5}, 2);
    const VerificationReport r = gof_check(gof_bins(p), sample(p, 31337, 100000));
    CHECK(r.pass);
  }
  SUBCASE("a deliberately swapped pmf fails") {
    const MghParams p({2.5, 2.5}, 2);
    GofBins bins = gof_bins(p);
    std::swap(bins.probs[0], bins.probs[1]);  // 0.1875 <-> 0.625
    const VerificationReport r = gof_check(bins, sample(p, 31337, 100000));
    CHECK_FALSE(r.pass);
    CHECK(row(r, "p_value").observed < 1e-3);
  }
  SUBCASE("too few draws is an error, not a weak test") {
    const MghParams p({2.5, 2.5}, 2);
    CHECK_THROWS_AS(gof_check(gof_bins(p), sample(p, 1, 10)), Error);
  }
  SUBCASE("single-cell support degenerates gracefully") {
    const MghParams p({2.0, 3.0}, 5);
    const VerificationReport r = gof_check(gof_bins(p), sample(p, 8, 100));
    CHECK(r.pass);
    CHECK(row(r, "p_value").observed == 1.0);
  }
}

TEST_CASE("reports are reproducible") {
  const MighParams p({-2.0, -3.0}, 2);
  const VerificationReport a = verify_normalization(p, 1e-6, 1e-9);
  const VerificationReport b = verify_normalization(p, 1e-6, 1e-9);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].observed == b.rows[i].observed);
    CHECK(a.rows[i].deviation == b.rows[i].deviation);
  }
}

}  // TEST_SUITE
