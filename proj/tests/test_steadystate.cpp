#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/steadystate.hpp"

using namespace ramsey;

namespace {
// High-curvature parameter set where both long-run gaps are positive:
// delta = 0.75, rho = 0.2, r = 0.25, sigma = 1.
const RamseyParams kSharp{0.2, 0.75, 1.0};
const double kSharpRate = 0.25;
}  // namespace

TEST_CASE("Cobb-Douglas closed forms") {
    auto cd = ProductionSpec::cobb_douglas(0.5);
    RamseyParams rp{0.02, 0.075, 0.5};
    // Zero-consumption point: k^{-1/2} = delta -> k = delta^{-2}.
    CHECK(solow_equilibrium(cd, 0.075, 0.0) ==
          doctest::Approx(1.0 / (0.075 * 0.075)).epsilon(1e-10));
    // Interior point: f'(k) = alpha k^{alpha-1} = rho + delta.
    auto ss = case2_steady_state(cd, rp, 0.0);
    CHECK(ss.k_inf == doctest::Approx(std::pow(0.5 / 0.095, 2.0)).epsilon(1e-10));
    CHECK(ss.c_inf ==
          doctest::Approx(std::sqrt(ss.k_inf) - 0.075 * ss.k_inf).epsilon(1e-10));
    CHECK(ss.x_inf == doctest::Approx(ss.c_inf / ss.k_inf).epsilon(1e-12));
    CHECK(ss.z_inf == doctest::Approx(ss.k_inf / std::sqrt(ss.k_inf)).epsilon(1e-12));
    CHECK(ss.kind == SteadyCase::CaseII);
}

TEST_CASE("log production closed forms at the sharp parameter set") {
    auto lg = ProductionSpec::log();
    // f'(k) = 1/(1+k): k = 1/(rho + delta + n_inf) - 1.
    auto lo = case2_steady_state(lg, kSharp, -kSharpRate);
    auto hi = case2_steady_state(lg, kSharp, 0.0);
    CHECK(lo.k_inf == doctest::Approx(1.0 / 0.7 - 1.0).epsilon(1e-12));
    CHECK(hi.k_inf == doctest::Approx(1.0 / 0.95 - 1.0).epsilon(1e-12));
}

TEST_CASE("CARA production closed forms at the sharp parameter set") {
    auto ca = ProductionSpec::cara();
    auto lo = case2_steady_state(ca, kSharp, -kSharpRate);
    auto hi = case2_steady_state(ca, kSharp, 0.0);
    CHECK(lo.k_inf == doctest::Approx(-std::log(0.7)).epsilon(1e-12));
    CHECK(hi.k_inf == doctest::Approx(-std::log(0.95)).epsilon(1e-12));
}

TEST_CASE("the x gap between population limits") {
    // Reference values for the sharp set; the ratio-gap identity pins both.
    CHECK(delta_x(ProductionSpec::log(), kSharp, kSharpRate) ==
          doctest::Approx(0.107669).epsilon(1e-3));
    CHECK(delta_x(ProductionSpec::cara(), kSharp, kSharpRate) ==
          doctest::Approx(0.116316).epsilon(1e-3));
    CHECK(std::abs(delta_x(ProductionSpec::log(), kSharp, kSharpRate) - 0.107669) < 1e-4);
    CHECK(std::abs(delta_x(ProductionSpec::cara(), kSharp, kSharpRate) - 0.116316) < 1e-4);

    // At a low-curvature set both rest points sit beyond the curvature-gap
    // peak, where h is decreasing, so the same gap comes out negative.
    RamseyParams flat{0.02, 0.075, 1.0};
    double dx_log = delta_x(ProductionSpec::log(), flat, 0.025);
    double dx_cara = delta_x(ProductionSpec::cara(), flat, 0.025);
    CHECK(dx_log < 0.0);
    CHECK(dx_cara < 0.0);
    MESSAGE("low-curvature set: delta_x(log) = ", dx_log, ", delta_x(cara) = ", dx_cara);
}

TEST_CASE("consumption gap at the sharp parameter set") {
    double dc_log = delta_c(ProductionSpec::log(), kSharp, kSharpRate);
    double dc_cara = delta_c(ProductionSpec::cara(), kSharp, kSharpRate);
    CHECK(dc_log > 0.0);
    CHECK(dc_cara > 0.0);
    MESSAGE("delta_c(log) = ", dc_log, ", delta_c(cara) = ", dc_cara);
}

TEST_CASE("x exceeds rho by exactly the curvature gap") {
    for (auto spec : {ProductionSpec::ces(0.3, 0.01), ProductionSpec::cobb_douglas(0.4),
                      ProductionSpec::log(), ProductionSpec::cara()}) {
        RamseyParams rp{0.04, 0.3, 1.0};
        for (double n_inf : {-0.1, 0.0}) {
            auto ss = case2_steady_state(spec, rp, n_inf);
            CHECK(ss.x_inf - rp.rho ==
                  doctest::Approx(curvature_gap(spec, ss.k_inf)).epsilon(1e-12));
        }
    }
}

TEST_CASE("randomized tuples: corollary inequalities") {
    auto tuples = oracles::sample_valid_tuples(120, 20260816);
    REQUIRE(tuples.size() == 120);
    for (const auto& s : tuples) {
        RamseyParams rp{s.rho, s.delta, 1.0};
        auto lo = case2_steady_state(s.spec, rp, -s.rate);
        auto hi = case2_steady_state(s.spec, rp, 0.0);

        // Declining population settles with more capital per head.
        CHECK(lo.k_inf > hi.k_inf);

        // x = c/k stays strictly above the discount rate.
        CHECK(lo.x_inf > s.rho);
        CHECK(hi.x_inf > s.rho);
        CHECK(curvature_gap(s.spec, lo.k_inf) > 1e-12);
        CHECK(curvature_gap(s.spec, hi.k_inf) > 1e-12);

        // The consumption gap dominates the capital-requirement bound.
        double dc = delta_c(s.spec, rp, s.rate);
        CHECK(dc > 0.0);
        CHECK(dc >= s.rho * (lo.k_inf - hi.k_inf) + s.rate * hi.k_inf - 1e-12);

        // Interior consumption never undercuts rho k.
        CHECK(lo.c_inf >= s.rho * lo.k_inf * (1.0 - 1e-9));
        CHECK(hi.c_inf >= s.rho * hi.k_inf * (1.0 - 1e-9));

        // The zero-consumption point lies beyond the interior one whenever it
        // exists (a saturating CES can put delta outside the average-product
        // range even though the interior target is fine).
        try {
            CHECK(solow_equilibrium(s.spec, s.delta, 0.0) > hi.k_inf);
        } catch (const NoRootError&) {
        }
    }
}

TEST_CASE("error taxonomy") {
    // Effective depreciation must stay positive.
    CHECK_THROWS_AS(solow_equilibrium(ProductionSpec::log(), 0.05, -0.07),
                    InstabilityError);
    CHECK_THROWS_AS(case2_steady_state(ProductionSpec::log(), RamseyParams{0.02, 0.05, 1.0}, -0.07),
                    InstabilityError);
    // delta <= r leaves the collapsing branch without a steady state.
    CHECK_THROWS_AS(delta_c(ProductionSpec::log(), RamseyParams{0.02, 0.05, 1.0}, 0.06),
                    InstabilityError);
    // CARA: f' < 1 everywhere, so rho + delta + n_inf >= 1 has no solution.
    CHECK_THROWS_AS(case2_steady_state(ProductionSpec::cara(), RamseyParams{0.3, 0.8, 1.0}, 0.0),
                    NoSolutionError);
    // log: f(k)/k <= 1 with limit 1 at k -> 0, so delta + n_inf >= 1 only
    // meets the degenerate root k = 0.
    try {
        solow_equilibrium(ProductionSpec::log(), 1.2, 0.0);
        FAIL("expected NoRootError");
    } catch (const NoRootError& e) {
        CHECK(e.degenerate);
    }
}

TEST_CASE("case I carries zero consumption") {
    auto ss = case1_steady_state(ProductionSpec::cobb_douglas(0.5),
                                 RamseyParams{0.02, 0.075, 1.0}, 0.0);
    CHECK(ss.kind == SteadyCase::CaseI);
    CHECK(ss.c_inf == 0.0);
    CHECK(ss.k_inf == doctest::Approx(1.0 / (0.075 * 0.075)).epsilon(1e-10));
    CHECK(std::string(to_string(ss.kind)) == "case1");
}

TEST_CASE("verify_limit matches a converged run and rejects a truncated one") {
    auto spec = ProductionSpec::ces(0.3, 0.01);
    RamseyParams rp{0.02, 0.075, 0.01};
    AlleeParams ap(0.025, 1.0, 2.0, 0.5);
    auto ss = case2_steady_state(spec, rp, -0.025);
    auto traj = saddle_path(spec, rp, ap, 1.0, 2000.0);
    auto report = verify_limit(traj, ss, 1e-3);
    CHECK(report.matched);
    CHECK_FALSE(report.truncated);
    CHECK(report.k_error < 1e-6);
    CHECK(report.c_error < 1e-3);

    AlleeParams runaway(0.085, 1.0, 2.0, 0.5);
    auto boom = integrate_full(spec, rp, runaway, {0.0, 1.0, 0.5, 0.5}, 6000.0);
    auto bad = verify_limit(boom, ss, 1e-3);
    CHECK_FALSE(bad.matched);
    CHECK(bad.truncated);
    CHECK(bad.termination == Termination::BlowUp);
}
