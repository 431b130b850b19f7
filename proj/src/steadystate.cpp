#include "ramsey/steadystate.hpp"

#include <cmath>
#include <limits>

#include "ramsey/errors.hpp"

namespace ramsey {

const char* to_string(SteadyCase c) {
    return c == SteadyCase::CaseI ? "case1" : "case2";
}

namespace {

// k -> 0+ limit of f(k)/k (may be +inf), used to split "no root" from
// "degenerate root at the origin".
double average_product_origin_limit(const ProductionSpec& spec) {
    switch (spec.kind) {
        case ProductionKind::CobbDouglas:
            return std::numeric_limits<double>::infinity();
        case ProductionKind::Log:
        case ProductionKind::Cara:
            return 1.0;
        case ProductionKind::CES:
            // tau > 0: f(0) > 0 so f/k diverges; tau < 0: f ~ alpha^(1/tau) k.
            return spec.tau > 0.0 ? std::numeric_limits<double>::infinity()
                                  : std::pow(spec.alpha, 1.0 / spec.tau);
    }
    return 0.0;
}

}  // namespace

double solow_equilibrium(const ProductionSpec& spec, double delta, double n_inf) {
    const double target = delta + n_inf;
    if (!(target > 0.0))
        throw InstabilityError(
            "delta + n_inf <= 0: effective depreciation vanishes, no equilibrium");
    if (target >= average_product_origin_limit(spec))
        throw NoRootError("average product stays below delta + n_inf: only k = 0", true);

    // f/k is strictly decreasing; bracket by geometric growth then bisect.
    double lo = 1e-8, hi = 1e8;
    auto above = [&](double k) { return average_product(spec, k) > target; };
    for (int i = 0; i < 60 && !above(lo); ++i) lo *= 0.25;
    for (int i = 0; i < 60 && above(hi); ++i) hi *= 4.0;
    if (!above(lo) || above(hi))
        throw NoRootError("average product never crosses delta + n_inf", false);

    // The bracket must contain exactly one crossing; f/k monotone makes the
    // sign pattern over a scan strictly one-way. Cheap guard against a bad
    // family implementation.
    {
        int changes = 0;
        bool prev = above(lo);
        for (int i = 1; i <= 48; ++i) {
            double k = lo * std::pow(hi / lo, i / 48.0);
            bool cur = above(k);
            if (cur != prev) ++changes;
            prev = cur;
        }
        if (changes != 1)
            throw NoRootError("average product is not monotone across the bracket",
                              false);
    }

    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (above(mid) ? lo : hi) = mid;
        if (hi - lo <= 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

SteadyState case1_steady_state(const ProductionSpec& spec, const RamseyParams& rp,
                               double n_inf) {
    double k = solow_equilibrium(spec, rp.delta, n_inf);
    return {SteadyCase::CaseI, n_inf, k, 0.0, 0.0, k / intensive_output(spec, k)};
}

SteadyState case2_steady_state(const ProductionSpec& spec, const RamseyParams& rp,
                               double n_inf) {
    if (!(rp.delta + n_inf > 0.0))
        throw InstabilityError("delta + n_inf <= 0: no interior steady state");
    double k = inverse_marginal(spec, rp.rho + rp.delta + n_inf);
    double f = intensive_output(spec, k);
    double c = f - (rp.delta + n_inf) * k;
    return {SteadyCase::CaseII, n_inf, k, c, c / k, k / f};
}

double delta_c(const ProductionSpec& spec, const RamseyParams& rp, double rate) {
    if (!(rp.delta > rate))
        throw InstabilityError("long-run gaps need delta > rate");
    return case2_steady_state(spec, rp, -rate).c_inf -
           case2_steady_state(spec, rp, 0.0).c_inf;
}

double delta_x(const ProductionSpec& spec, const RamseyParams& rp, double rate) {
    if (!(rp.delta > rate))
        throw InstabilityError("long-run gaps need delta > rate");
    return curvature_gap(spec, case2_steady_state(spec, rp, -rate).k_inf) -
           curvature_gap(spec, case2_steady_state(spec, rp, 0.0).k_inf);
}

LimitReport verify_limit(const Trajectory& traj, const SteadyState& steady,
                         double tol) {
    LimitReport rep;
    rep.kind = steady.kind;
    rep.termination = traj.termination;
    rep.truncated = traj.termination != Termination::ReachedEnd;
    if (traj.size() == 0) return rep;

    auto end = traj.back();
    rep.k_error = std::abs(end.k - steady.k_inf) / std::max(std::abs(steady.k_inf), 1e-300);
    rep.c_error = steady.c_inf != 0.0
                      ? std::abs(end.c - steady.c_inf) / std::abs(steady.c_inf)
                      : std::abs(end.c);
    rep.matched = !rep.truncated && rep.k_error <= tol && rep.c_error <= tol;
    return rep;
}

}  // namespace ramsey
