#pragma once

// Long-run states of the system once n(t) has settled at its limit n_inf:
//   Case I  (c = 0):   f(k)/k = delta + n_inf, the zero-consumption (Solow) point
//   Case II (c > 0):   f'(k) = rho + delta + n_inf, the interior saddle point
// plus the long-run consumption and output-consumption-ratio gaps between the
// collapsing-population limit (n_inf = -rate) and the settled one (n_inf = 0).

#include "ramsey/dynamics.hpp"
#include "ramsey/production.hpp"

namespace ramsey {

enum class SteadyCase { CaseI, CaseII };
const char* to_string(SteadyCase c);

struct SteadyState {
    SteadyCase kind;
    double n_infinity;
    double k_inf;
    double c_inf;
    double x_inf;  // c/k limit; for Case I interpret as 1/z - delta - n_inf = 0 + rho gap
    double z_inf;  // k/f(k) at k_inf
};

// Root of f(k)/k = delta + n_inf.
// Throws InstabilityError when delta + n_inf <= 0 (capital cannot settle) and
// NoRootError when the target is outside the range of the average product;
// the degenerate flag marks targets at or above the k->0 limit (only the
// trivial root k = 0, e.g. CARA with delta + n_inf >= 1).
double solow_equilibrium(const ProductionSpec& spec, double delta, double n_inf);

SteadyState case1_steady_state(const ProductionSpec& spec, const RamseyParams& rp,
                               double n_inf);

// k_inf = (f')^{-1}(rho + delta + n_inf), c_inf = f(k_inf) - (delta + n_inf) k_inf.
// Throws NoSolutionError (target outside range of f') or InstabilityError
// (delta + n_inf <= 0).
SteadyState case2_steady_state(const ProductionSpec& spec, const RamseyParams& rp,
                               double n_inf);

// Long-run consumption gap c_inf(-rate) - c_inf(0); needs delta > rate.
double delta_c(const ProductionSpec& spec, const RamseyParams& rp, double rate);

// Long-run gap of x = c/k: h(k_inf(-rate)) - h(k_inf(0)); needs delta > rate.
double delta_x(const ProductionSpec& spec, const RamseyParams& rp, double rate);

struct LimitReport {
    bool matched = false;
    SteadyCase kind = SteadyCase::CaseII;
    double k_error = 0.0;  // relative
    double c_error = 0.0;  // relative for Case II, absolute for Case I (c_inf = 0)
    Termination termination = Termination::ReachedEnd;
    bool truncated = false;  // trajectory ended on a guard, not at t_end
};

// Compare a trajectory's endpoint against a steady state at relative
// tolerance tol. A guard-terminated trajectory never matches; the guard tag
// is propagated.
LimitReport verify_limit(const Trajectory& traj, const SteadyState& steady,
                         double tol);

}  // namespace ramsey
