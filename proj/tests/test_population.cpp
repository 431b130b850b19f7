#include <cmath>

#include "doctest.h"
#include "ramsey/errors.hpp"
#include "ramsey/population.hpp"

using namespace ramsey;

namespace {
// Reference parameters used throughout: r = 0.025, N = 1, M = 2.
AlleeParams base(double labour0) { return AlleeParams(0.025, 1.0, 2.0, labour0); }
}  // namespace

TEST_CASE("constructor validates its domain") {
    CHECK_THROWS_AS(AlleeParams(0.0, 1.0, 2.0, 0.5), ParameterDomainError);
    CHECK_THROWS_AS(AlleeParams(-0.1, 1.0, 2.0, 0.5), ParameterDomainError);
    CHECK_THROWS_AS(AlleeParams(0.1, 0.0, 2.0, 0.5), ParameterDomainError);
    CHECK_THROWS_AS(AlleeParams(0.1, 2.0, 2.0, 0.5), ParameterDomainError);  // N == M
    CHECK_THROWS_AS(AlleeParams(0.1, 3.0, 2.0, 0.5), ParameterDomainError);  // N > M
    CHECK_THROWS_AS(AlleeParams(0.1, 1.0, 2.0, 0.0), ParameterDomainError);
    CHECK_THROWS_AS(AlleeParams(0.1, 1.0, 2.0, -1.0), ParameterDomainError);
}

TEST_CASE("growth rate: hand value, zeros, sign pattern") {
    auto p = base(0.5);
    // n(1.5) = 0.025 (1 - 3/4)(3/2 - 1) = 0.025 / 8.
    CHECK(growth_rate(p, 1.5) == doctest::Approx(0.003125).epsilon(1e-14));
    CHECK(growth_rate(p, 1.0) == 0.0);
    CHECK(growth_rate(p, 2.0) == 0.0);
    CHECK(growth_rate(p, 0.5) < 0.0);
    CHECK(growth_rate(p, 1.2) > 0.0);
    CHECK(growth_rate(p, 2.5) < 0.0);
    CHECK_THROWS_AS(growth_rate(p, -0.1), DomainError);
}

TEST_CASE("regime classification and the uniform growth bound") {
    auto below = classify_regime(base(0.5));
    CHECK(below.tag == RegimeTag::BelowThreshold);
    CHECK(below.n_infinity == doctest::Approx(-0.025));
    CHECK(below.eta == doctest::Approx(0.025));  // |n| -> r as L -> 0

    auto midlow = classify_regime(base(1.2));
    CHECK(midlow.tag == RegimeTag::MidLow);
    CHECK(midlow.n_infinity == 0.0);
    // On (N, M) the growth rate peaks at the midpoint.
    CHECK(midlow.eta == doctest::Approx(growth_rate(base(1.2), 1.5)));

    auto midhigh = classify_regime(base(1.8));
    CHECK(midhigh.tag == RegimeTag::MidHigh);
    CHECK(midhigh.eta == doctest::Approx(growth_rate(base(1.8), 1.5)));

    auto above = classify_regime(base(3.0));
    CHECK(above.tag == RegimeTag::AboveCapacity);
    CHECK(above.n_infinity == 0.0);
    CHECK(above.eta == doctest::Approx(std::abs(growth_rate(base(3.0), 3.0))));

    for (double L0 : {1.0, 2.0}) {
        auto fixed = classify_regime(base(L0));
        CHECK(fixed.tag == RegimeTag::Fixed);
        CHECK(fixed.n_infinity == 0.0);
        CHECK(fixed.eta == 0.0);
    }
}

TEST_CASE("regime names") {
    CHECK(std::string(to_string(RegimeTag::BelowThreshold)) == "below_threshold");
    CHECK(std::string(to_string(RegimeTag::Fixed)) == "fixed");
}

TEST_CASE("below threshold the population collapses") {
    auto p = base(0.5);
    auto s = integrate_population(p, 500.0);
    REQUIRE(s.size() > 2);
    CHECK(s.t.front() == 0.0);
    CHECK(s.t.back() == doctest::Approx(500.0));
    CHECK(s.labour.front() == 0.5);
    CHECK(s.labour.back() < 1e-4);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.labour[i] < s.labour[i - 1]);
    // n(L(t)) -> -r from above; the approach is only as fast as the collapse
    // itself (rate r), hence the long horizon.
    CHECK(s.growth.back() == doctest::Approx(-0.025).epsilon(1e-6));
    CHECK(s.growth.back() > -0.025);
}

TEST_CASE("between threshold and capacity the population saturates") {
    auto p = base(1.2);
    auto s = integrate_population(p, 600.0);
    CHECK(std::abs(s.labour.back() - 2.0) < 1e-4);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.labour[i] > s.labour[i - 1]);
    CHECK(std::abs(s.growth.back()) < 1e-6);
}

TEST_CASE("above capacity the population declines to capacity") {
    auto p = base(3.0);
    auto s = integrate_population(p, 400.0);
    CHECK(s.labour.back() == doctest::Approx(2.0).epsilon(1e-3));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.labour[i] < s.labour[i - 1]);
}

TEST_CASE("eta bounds |n| along the whole path") {
    for (double L0 : {0.5, 1.2, 1.8, 3.0, 1.0}) {
        auto p = base(L0);
        auto regime = classify_regime(p);
        auto s = integrate_population(p, 500.0);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(std::abs(s.growth[i]) <= regime.eta + 1e-12);
    }
}

TEST_CASE("fixed points stay put") {
    for (double L0 : {1.0, 2.0}) {
        auto s = integrate_population(base(L0), 100.0);
        for (double L : s.labour) CHECK(L == L0);
    }
}

TEST_CASE("crossing_time refines against a fresh integration") {
    auto p = base(0.5);
    auto hit = crossing_time(p, 0.1);
    REQUIRE(hit.has_value());
    CHECK(*hit > 0.0);
    // Evaluate L at the reported time by dense interpolation of an
    // independently integrated path.
    auto s = integrate_population(p, *hit + 1.0, 1e-11, 1e-14);
    OdeSeries<1> probe;
    probe.t = s.t;
    for (std::size_t i = 0; i < s.size(); ++i) {
        probe.y.push_back({s.labour[i]});
        probe.dy.push_back({growth_rate(p, s.labour[i]) * s.labour[i]});
    }
    double L_at = hermite_eval<1>(probe, *hit)[0];
    CHECK(std::abs(L_at - 0.1) < 1e-6);
}

TEST_CASE("crossing_time edge cases") {
    // Starting exactly on the level: the first crossing is t = 0.
    auto at_level = crossing_time(base(0.5), 0.5);
    REQUIRE(at_level.has_value());
    CHECK(*at_level == 0.0);
    // A collapsing population never reaches the capacity.
    CHECK_FALSE(crossing_time(base(0.5), 1.9).has_value());
    // A saturating population never falls to the threshold.
    CHECK_FALSE(crossing_time(base(1.5), 1.0).has_value());
    CHECK_THROWS_AS(crossing_time(base(0.5), 0.0), DomainError);
}
