#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ramsey/dynamics.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/steadystate.hpp"

using namespace ramsey;

namespace {

// The CES scenario used for the trajectory figures: near-Cobb-Douglas
// technology, sluggish consumption adjustment, slow population drift.
const ProductionSpec kCes = ProductionSpec::ces(0.3, 0.01);
const RamseyParams kEcon{0.02, 0.075, 0.01};
AlleeParams allee(double labour0) { return AlleeParams(0.025, 1.0, 2.0, labour0); }

}  // namespace

TEST_CASE("rhs hand check") {
    auto d = rhs_full(kCes, kEcon, allee(1.5), {0.0, 1.0, 0.5, 1.5});
    // f(1) = 1, f'(1) = 0.3, n(1.5) = 0.003125.
    CHECK(d.dk == doctest::Approx(1.0 - 0.078125 - 0.5).epsilon(1e-12));
    CHECK(d.dc == doctest::Approx(0.01 * 0.5 * (0.3 - 0.02 - 0.075 - 0.003125)).epsilon(1e-12));
    CHECK(d.dlabour == doctest::Approx(0.025 * 1.5 * 0.25 * 0.5).epsilon(1e-12));
}

TEST_CASE("rhs vanishes at the interior rest point") {
    auto ss = case2_steady_state(kCes, kEcon, 0.0);
    // Labour pinned at the threshold: n = 0 for all time.
    auto d = rhs_full(kCes, kEcon, allee(1.0), {0.0, ss.k_inf, ss.c_inf, 1.0});
    CHECK(std::abs(d.dk) < 1e-12);
    CHECK(std::abs(d.dc) < 1e-12);
    CHECK(d.dlabour == 0.0);
}

TEST_CASE("zero consumption stays zero") {
    auto d = rhs_full(kCes, kEcon, allee(0.5), {0.0, 2.0, 0.0, 0.5});
    CHECK(d.dc == 0.0);
}

TEST_CASE("zero-consumption Cobb-Douglas run follows the Bernoulli solution") {
    auto cd = ProductionSpec::cobb_douglas(0.5);
    auto traj = integrate_full(cd, kEcon, allee(1.0), {0.0, 1.0, 0.0, 1.0}, 600.0);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        double exact = oracles::bernoulli_solow(0.5, 0.075, 1.0, traj.t[i]);
        CHECK(traj.k[i] == doctest::Approx(exact).epsilon(1e-6));
    }
    // Settled at the zero-consumption equilibrium (1/delta)^2.
    CHECK(traj.k.back() == doctest::Approx(1.0 / (0.075 * 0.075)).epsilon(1e-4));
}

TEST_CASE("collapsing population raises the zero-consumption equilibrium") {
    auto cd = ProductionSpec::cobb_douglas(0.5);
    auto below = integrate_full(cd, kEcon, allee(0.5), {0.0, 1.0, 0.0, 0.5}, 1000.0);
    auto fixed = integrate_full(cd, kEcon, allee(1.0), {0.0, 1.0, 0.0, 1.0}, 1000.0);
    REQUIRE(below.termination == Termination::ReachedEnd);
    // Effective depreciation falls to delta - r = 0.05: k settles near 400
    // instead of ~177.8.
    CHECK(below.k.back() == doctest::Approx(400.0).epsilon(1e-3));
    CHECK(below.k.back() > fixed.k.back());
}

TEST_CASE("capital blows up in finite time when delta < r below the threshold") {
    AlleeParams runaway(0.085, 1.0, 2.0, 0.5);
    double c0 = 0.5 * intensive_output(kCes, 1.0);
    auto traj = integrate_full(kCes, kEcon, runaway, {0.0, 1.0, c0, 0.5}, 6000.0);
    CHECK(traj.termination == Termination::BlowUp);
    CHECK(traj.t.back() < 6000.0);
    CHECK(traj.k.back() > kOverflowGuard);

    // Same consumption policy at the stable rate survives the whole horizon.
    auto calm = integrate_full(kCes, kEcon, allee(0.5), {0.0, 1.0, c0, 0.5}, 2000.0);
    CHECK(calm.termination == Termination::ReachedEnd);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(integrate_full(kCes, kEcon, allee(0.5), {0.0, 0.0, 0.1, 0.5}, 10.0),
                    DomainError);
    CHECK_THROWS_AS(integrate_full(kCes, kEcon, allee(0.5), {0.0, 1.0, -0.1, 0.5}, 10.0),
                    DomainError);
    CHECK(stable_regime(kEcon, allee(0.5)));
    CHECK_FALSE(stable_regime(kEcon, AlleeParams(0.085, 1.0, 2.0, 0.5)));
}

TEST_CASE("lower capital envelope is exact when labour is pinned") {
    // L0 = threshold: n = 0, so the envelope is k0 e^{-delta t} in closed form.
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i * 1.0);
    auto b = capital_bounds(kCes, kEcon, allee(1.0), 2.0, grid);
    REQUIRE(b.lower.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(b.lower[i] == doctest::Approx(2.0 * std::exp(-0.075 * grid[i])).epsilon(1e-9));
}

TEST_CASE("upper capital envelope matches the Bernoulli closed form") {
    auto cd = ProductionSpec::cobb_douglas(0.5);
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(i * 0.5);
    StepControl tight;
    tight.rtol = 1e-12;
    tight.atol = 1e-14;
    auto b = capital_bounds(cd, kEcon, allee(1.0), 1.0, grid, tight);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double exact = oracles::bernoulli_solow(0.5, 0.075, 1.0, grid[i]);
        CHECK(b.upper[i] == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("saddle trajectory is sandwiched by its envelopes") {
    auto traj = saddle_path(kCes, kEcon, allee(0.5), 1.0, 500.0);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!std::isfinite(traj.k_lower[i]) || !std::isfinite(traj.k_upper[i])) continue;
        double eps = 1e-6 * (1.0 + traj.k_upper[i]);
        CHECK(traj.k[i] >= traj.k_lower[i] - eps);
        CHECK(traj.k[i] <= traj.k_upper[i] + eps);
        ++checked;
    }
    CHECK(checked == traj.size());

    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!std::isfinite(traj.c_lower[i]) || !std::isfinite(traj.c_upper[i])) continue;
        double eps = 1e-6 * (1.0 + traj.c_upper[i]);
        CHECK(traj.c[i] >= traj.c_lower[i] - eps);
        CHECK(traj.c[i] <= traj.c_upper[i] + eps);
    }
}

TEST_CASE("derived ratio columns are consistent with the states") {
    auto traj = saddle_path(kCes, kEcon, allee(1.5), 1.0, 300.0);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.x[i] * traj.k[i] == doctest::Approx(traj.c[i]).epsilon(1e-10));
        CHECK(traj.z[i] * intensive_output(kCes, traj.k[i]) ==
              doctest::Approx(traj.k[i]).epsilon(1e-10));
        double f = intensive_output(kCes, traj.k[i]);
        CHECK(traj.savings_rate[i] == doctest::Approx((f - traj.c[i]) / f).epsilon(1e-10));
    }
}

TEST_CASE("capital_from_share inverts k/f(k)") {
    for (double k : {0.1, 1.0, 5.0, 40.0}) {
        double z = k / intensive_output(kCes, k);
        CHECK(capital_from_share(kCes, z) == doctest::Approx(k).epsilon(1e-9));
    }
    CHECK_THROWS_AS(capital_from_share(kCes, -1.0), DomainError);
}

TEST_CASE("ratio system is stationary at the rest point") {
    auto ss = case2_steady_state(kCes, kEcon, 0.0);
    auto rs = integrate_ratio(kCes, kEcon, allee(1.0), ss.z_inf, ss.x_inf, 50.0);
    REQUIRE(rs.size() > 1);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        CHECK(rs.z[i] == doctest::Approx(ss.z_inf).epsilon(1e-8));
        CHECK(rs.x[i] == doctest::Approx(ss.x_inf).epsilon(1e-8));
    }
}

TEST_CASE("ratio formulation agrees with the full system off the saddle") {
    // A consumption level below the shooting value rolls down to the
    // quasi-Solow attractor; that flow is contracting, so the two
    // formulations must agree to integration accuracy.
    StepControl tight;
    tight.rtol = 1e-10;
    tight.atol = 1e-12;
    double c0 = 0.8;
    auto traj = integrate_full(kCes, kEcon, allee(0.5), {0.0, 1.0, c0, 0.5}, 200.0, tight);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    double z0 = 1.0 / intensive_output(kCes, 1.0);
    auto rs = integrate_ratio_at(kCes, kEcon, allee(0.5), z0, c0, traj.t, tight);
    REQUIRE(rs.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(rs.x[i] == doctest::Approx(traj.c[i] / traj.k[i]).epsilon(1e-5));
        double z_full = traj.k[i] / intensive_output(kCes, traj.k[i]);
        CHECK(rs.z[i] == doctest::Approx(z_full).epsilon(1e-5));
    }
}

TEST_CASE("shooting from the rest point returns its consumption") {
    auto ss = case2_steady_state(kCes, kEcon, 0.0);
    double c0 = shoot_initial_consumption(kCes, kEcon, allee(1.0), ss.k_inf);
    CHECK(c0 == doctest::Approx(ss.c_inf).epsilon(1e-6));
}

TEST_CASE("shooting has no target when no interior steady state exists") {
    AlleeParams runaway(0.085, 1.0, 2.0, 0.5);
    CHECK_THROWS_AS(shoot_initial_consumption(kCes, kEcon, runaway, 1.0),
                    NoSaddlePathError);
}

TEST_CASE("saddle path converges to the interior rest point") {
    auto ss = case2_steady_state(kCes, kEcon, 0.0);
    auto traj = saddle_path(kCes, kEcon, allee(1.0), 0.5 * ss.k_inf, 1200.0);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    auto report = verify_limit(traj, ss, 1e-3);
    CHECK(report.matched);
    CHECK_FALSE(report.truncated);
    // Capital is pinned far tighter than consumption by the staging.
    CHECK(report.k_error < 1e-6);
}

TEST_CASE("tightening the tolerance does not move a contracting run") {
    auto cd = ProductionSpec::cobb_douglas(0.5);
    StepControl loose;  // defaults
    StepControl tight;
    tight.rtol = 1e-11;
    tight.atol = 1e-13;
    auto a = integrate_full(cd, kEcon, allee(0.5), {0.0, 1.0, 0.3, 0.5}, 300.0, loose);
    auto b = integrate_full(cd, kEcon, allee(0.5), {0.0, 1.0, 0.3, 0.5}, 300.0, tight);
    REQUIRE(a.termination == Termination::ReachedEnd);
    REQUIRE(b.termination == Termination::ReachedEnd);
    CHECK(a.k.back() == doctest::Approx(b.k.back()).epsilon(1e-6));
    CHECK(a.c.back() == doctest::Approx(b.c.back()).epsilon(1e-6));
}

TEST_CASE("welfare closed forms on synthetic paths") {
    Trajectory traj;
    const double T = 50.0;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        traj.t.push_back(T * i / n);
        traj.c.push_back(std::exp(1.0));
        traj.k.push_back(1.0);
        traj.labour.push_back(1.0);
    }
    // sigma = 1: u(e) = 1, so W = (1 - e^{-rho T}) / rho.
    RamseyParams log_util{0.1, 0.075, 1.0};
    auto w = welfare(log_util, traj);
    CHECK(w.note.empty());
    CHECK(w.value == doctest::Approx((1.0 - std::exp(-0.1 * T)) / 0.1).epsilon(1e-5));

    // sigma = 2, c = 4: u = 2(sqrt(4) - 1) = 2.
    for (auto& c : traj.c) c = 4.0;
    RamseyParams crra{0.1, 0.075, 2.0};
    auto w2 = welfare(crra, traj);
    CHECK(w2.value == doctest::Approx(2.0 * (1.0 - std::exp(-0.1 * T)) / 0.1).epsilon(1e-5));

    // A zero-consumption sample with sigma <= 1 pins welfare at -infinity.
    traj.c[5] = 0.0;
    auto w3 = welfare(log_util, traj);
    CHECK(w3.value == -std::numeric_limits<double>::infinity());
    CHECK_FALSE(w3.note.empty());
}

TEST_CASE("transversality residual decays along the saddle") {
    auto traj = saddle_path(kCes, kEcon, allee(1.0), 1.0, 2000.0);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    auto res = transversality_residual(kEcon, traj);
    REQUIRE(res.size() == traj.size());
    CHECK(res.back() < 1e-8);
    CHECK(res.back() < res.front());

    Trajectory flat;
    flat.t = {0.0, 1.0};
    flat.k = {0.0, 0.0};
    flat.c = {1.0, 1.0};
    flat.labour = {1.0, 1.0};
    auto zero = transversality_residual(kEcon, flat);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
}

TEST_CASE("termination names") {
    CHECK(std::string(to_string(Termination::ReachedEnd)) == "completed");
    CHECK(std::string(to_string(Termination::BlowUp)) == "blow_up");
    CHECK(std::string(to_string(Termination::CapitalFloor)) == "capital_floor");
}
