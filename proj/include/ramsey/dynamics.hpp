#pragma once

// The full three-equation system on (k, c, L):
//   dk = f(k) - (delta + n(L)) k - c
//   dc = sigma c (f'(k) - rho - delta - n(L))
//   dL = rate L (1 - L/capacity)(L/threshold - 1)
// plus the comparison-theorem envelopes, the (z, x) = (k/f(k), c/k) ratio
// formulation, saddle-path shooting, welfare and the transversality residual.

#include <span>
#include <string>
#include <vector>

#include "ramsey/integrate.hpp"
#include "ramsey/population.hpp"
#include "ramsey/production.hpp"

namespace ramsey {

struct RamseyParams {
    double rho = 0.0;    // discount rate > 0
    double delta = 0.0;  // depreciation > 0
    double sigma = 0.0;  // intertemporal elasticity > 0

    RamseyParams(double rho_, double delta_, double sigma_);
};

// delta > rate keeps effective depreciation positive in every population
// regime. Named predicate only; nothing enforces it.
bool stable_regime(const RamseyParams& rp, const AlleeParams& ap);

struct EconomyState {
    double t = 0.0;
    double k = 0.0;
    double c = 0.0;
    double labour = 0.0;
};

enum class Termination { ReachedEnd, BlowUp, CapitalFloor, ConsumptionFloor, StepUnderflow };
const char* to_string(Termination term);

// Guards checked on every accepted step.
inline constexpr double kOverflowGuard = 1e12;     // k above this: blow-up
inline constexpr double kCapitalFloor = 1e-12;     // k below this: collapse
inline constexpr double kConsumptionFloor = 1e-14; // c below this (when c0 > 0)

struct Trajectory {
    // samples (one entry per accepted step)
    std::vector<double> t, k, c, labour;
    std::vector<double> dk, dc, dlabour;
    // derived, same length
    std::vector<double> growth;        // n(L)
    std::vector<double> x;             // c/k
    std::vector<double> z;             // k/f(k)
    std::vector<double> savings_rate;  // (f(k) - c)/f(k)
    std::vector<double> k_lower, k_upper, c_lower, c_upper;
    Termination termination = Termination::ReachedEnd;

    std::size_t size() const { return t.size(); }
    EconomyState state(std::size_t i) const { return {t[i], k[i], c[i], labour[i]}; }
    EconomyState back() const { return state(size() - 1); }
};

struct Derivatives {
    double dk, dc, dlabour;
};

// Right-hand side at one state; needs k > 0, labour >= 0.
Derivatives rhs_full(const ProductionSpec& spec, const RamseyParams& rp,
                     const AlleeParams& ap, const EconomyState& s);

// Integrate from `initial` (initial.t is the start time) up to absolute time
// t_end. A fired guard or a step underflow terminates early; the partial
// trajectory is returned with the reason tagged, never silently truncated.
// All derived columns are filled in, including the envelope bounds; envelope
// entries that are themselves undefined (no Solow equilibrium) or truncated
// (the Solow bound blew up first) hold NaN.
Trajectory integrate_full(const ProductionSpec& spec, const RamseyParams& rp,
                          const AlleeParams& ap, const EconomyState& initial,
                          double t_end, const StepControl& ctl = {});

struct CapitalBounds {
    std::vector<double> lower, upper;
};

// Comparison-theorem envelope on the grid (anchored at t_grid times measured
// from 0 with labour starting at ap.labour0):
//   lower: k0 exp(-integral of (delta + n)), quadrature over the population path
//   upper: the zero-consumption (Solow) solution of dk = f(k) - (delta+n)k
CapitalBounds capital_bounds(const ProductionSpec& spec, const RamseyParams& rp,
                             const AlleeParams& ap, double k0,
                             std::span<const double> t_grid,
                             const StepControl& ctl = {});

struct ConsumptionBounds {
    std::vector<double> lower, upper;
};

// upper: f(k_upper). lower: c0 e^{sigma (B - delta - rho) t} (L0/L(t))^sigma
// with B = f'(k*) for k0 below the Solow equilibrium k*, else f'(k0).
// Evaluated on the trajectory's own grid; reuses its k_upper column when
// present. NaN when no Solow equilibrium exists.
ConsumptionBounds consumption_bounds(const ProductionSpec& spec,
                                     const RamseyParams& rp, const AlleeParams& ap,
                                     const Trajectory& traj);

struct RatioSeries {
    std::vector<double> t, z, x, labour;
    std::size_t size() const { return t.size(); }
};

// Invert k/f(k) = z (strictly increasing in k). Throws DomainError when z is
// outside the range.
double capital_from_share(const ProductionSpec& spec, double z);

// Integrate the ratio formulation from (z0, x0), labour from ap.labour0:
//   dz/z = (1 - f'(k) z)(1/z - (delta + n) - x)
//   dx/x = (sigma f'(k) - 1/z) + (1 - sigma)(delta + n) - sigma rho + x
// with k recovered from z at every evaluation.
RatioSeries integrate_ratio(const ProductionSpec& spec, const RamseyParams& rp,
                            const AlleeParams& ap, double z0, double x0,
                            double t_end, const StepControl& ctl = {});

// Same system, sampled exactly at the given sorted times (for comparing the
// two formulations on a shared grid).
RatioSeries integrate_ratio_at(const ProductionSpec& spec, const RamseyParams& rp,
                               const AlleeParams& ap, double z0, double x0,
                               std::span<const double> times,
                               const StepControl& ctl = {});

// Bisection over c0 in (0, f(k0)) classifying each trial by how it diverges
// within the horizon (80 iterations). t_horizon <= 0 selects the default
// 20/rho. Throws NoSaddlePathError when no interior steady state exists
// (e.g. delta <= rate with labour0 below the threshold).
double shoot_initial_consumption(const ProductionSpec& spec, const RamseyParams& rp,
                                 const AlleeParams& ap, double k0,
                                 double t_horizon = 0.0);

// Saddle-path trajectory over [0, t_end] by staged re-shooting. Each stage
// bisects c0 down to a one-ulp bracket, then integrates both bracket endpoints
// as shadow trajectories: samples are kept only while the two shadows agree to
// max(100*rtol, 1e-12) relative in k and c, the stage is truncated there, and
// the next stage re-anchors from the truncation point. A single shot cannot
// pin the saddle beyond roughly ln(1/eps)/lambda_unstable time units (the
// bracket itself departs within one step once the unstable mode amplifies a
// ulp), so agreement of the straddling shadows is the honest certificate of
// how far each stage is trustworthy. Consumption has re-anchoring jumps on
// the order of the agreement cut. stage_horizon <= 0 selects 20/rho.
Trajectory saddle_path(const ProductionSpec& spec, const RamseyParams& rp,
                       const AlleeParams& ap, double k0, double t_end,
                       const StepControl& ctl = {}, double stage_horizon = 0.0);

struct WelfareResult {
    double value = 0.0;
    std::string note;  // set when the value is a minus-infinity sentinel
};

// Discounted utility integral by trapezoid over the trajectory samples.
// u(c) = (c^(1-1/sigma) - 1)/(1 - 1/sigma), the log form exactly at sigma = 1.
// A zero-consumption sample with sigma <= 1 makes the integrand unbounded:
// the value is -infinity with a note.
WelfareResult welfare(const RamseyParams& rp, const Trajectory& traj);

// e^{-rho t} c^{-1/sigma} k per sample; 0 whenever k == 0.
std::vector<double> transversality_residual(const RamseyParams& rp,
                                            const Trajectory& traj);

}  // namespace ramsey
