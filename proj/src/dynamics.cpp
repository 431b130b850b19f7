#include "ramsey/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ramsey/errors.hpp"
#include "ramsey/steadystate.hpp"

namespace ramsey {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

RamseyParams::RamseyParams(double rho_, double delta_, double sigma_)
    : rho(rho_), delta(delta_), sigma(sigma_) {
    if (!(rho > 0.0)) throw ParameterDomainError("rho must be > 0");
    if (!(delta > 0.0)) throw ParameterDomainError("delta must be > 0");
    if (!(sigma > 0.0)) throw ParameterDomainError("sigma must be > 0");
}

bool stable_regime(const RamseyParams& rp, const AlleeParams& ap) {
    return rp.delta > ap.rate;
}

const char* to_string(Termination term) {
    switch (term) {
        case Termination::ReachedEnd: return "completed";
        case Termination::BlowUp: return "blow_up";
        case Termination::CapitalFloor: return "capital_floor";
        case Termination::ConsumptionFloor: return "consumption_floor";
        case Termination::StepUnderflow: return "step_underflow";
    }
    return "?";
}

Derivatives rhs_full(const ProductionSpec& spec, const RamseyParams& rp,
                     const AlleeParams& ap, const EconomyState& s) {
    if (!(s.k > 0.0)) throw DomainError("rhs_full needs k > 0");
    if (!(s.labour >= 0.0)) throw DomainError("rhs_full needs labour >= 0");
    double n = growth_rate(ap, s.labour);
    double dk = intensive_output(spec, s.k) - (rp.delta + n) * s.k - s.c;
    double dc = rp.sigma * s.c * (marginal_product(spec, s.k) - rp.rho - rp.delta - n);
    double dl = ap.rate * s.labour * (1.0 - s.labour / ap.capacity) *
                (s.labour / ap.threshold - 1.0);
    return {dk, dc, dl};
}

namespace {

enum : int { kTagBlowUp = 1, kTagCapitalFloor = 2, kTagConsumptionFloor = 3 };

Termination termination_from(const OdeSeries<3>& s) {
    switch (s.reason) {
        case StopReason::ReachedEnd: return Termination::ReachedEnd;
        case StopReason::StepUnderflow: return Termination::StepUnderflow;
        case StopReason::GuardStop:
            switch (s.guard_tag) {
                case kTagBlowUp: return Termination::BlowUp;
                case kTagCapitalFloor: return Termination::CapitalFloor;
                case kTagConsumptionFloor: return Termination::ConsumptionFloor;
            }
    }
    return Termination::StepUnderflow;
}

double allee_rhs(const AlleeParams& ap, double L) {
    return ap.rate * L * (1.0 - L / ap.capacity) * (L / ap.threshold - 1.0);
}

// The raw 3-state integration. Trial states outside the domain get NaN
// derivatives so the controller rejects and shrinks the step instead of
// sampling garbage.
OdeSeries<3> integrate_raw(const ProductionSpec& spec, const RamseyParams& rp,
                           const AlleeParams& ap, const EconomyState& initial,
                           double t_end, const StepControl& ctl) {
    auto rhs = [&](double, const std::array<double, 3>& y) -> std::array<double, 3> {
        double k = y[0], c = y[1], L = y[2];
        if (!(k > 0.0) || !(L >= 0.0)) return {kNaN, kNaN, kNaN};
        double n = growth_rate(ap, L);
        double dk = intensive_output(spec, k) - (rp.delta + n) * k - c;
        double dc = rp.sigma * c * (marginal_product(spec, k) - rp.rho - rp.delta - n);
        return {dk, dc, allee_rhs(ap, L)};
    };
    const bool arm_c_floor = initial.c > 0.0;
    auto guard = [arm_c_floor](double,
                               const std::array<double, 3>& y) -> std::optional<int> {
        if (y[0] > kOverflowGuard) return kTagBlowUp;
        if (y[0] < kCapitalFloor) return kTagCapitalFloor;
        if (arm_c_floor && y[1] < kConsumptionFloor) return kTagConsumptionFloor;
        return std::nullopt;
    };
    return integrate_dopri5<3>(rhs, {initial.k, initial.c, initial.labour}, initial.t,
                               t_end, ctl, guard);
}

Trajectory from_raw(const OdeSeries<3>& raw) {
    Trajectory traj;
    traj.termination = termination_from(raw);
    std::size_t m = raw.size();
    traj.t = raw.t;
    traj.k.reserve(m);
    traj.c.reserve(m);
    traj.labour.reserve(m);
    traj.dk.reserve(m);
    traj.dc.reserve(m);
    traj.dlabour.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        traj.k.push_back(raw.y[i][0]);
        traj.c.push_back(raw.y[i][1]);
        traj.labour.push_back(raw.y[i][2]);
        traj.dk.push_back(raw.dy[i][0]);
        traj.dc.push_back(raw.dy[i][1]);
        traj.dlabour.push_back(raw.dy[i][2]);
    }
    return traj;
}

// Shared by the public capital_bounds and the trajectory enrichment; the
// envelope is anchored at t_grid.front() with labour starting at ap.labour0.
CapitalBounds capital_bounds_impl(const ProductionSpec& spec, const RamseyParams& rp,
                                  const AlleeParams& ap, double k0,
                                  std::span<const double> t_grid,
                                  const StepControl& ctl) {
    CapitalBounds out;
    const std::size_t m = t_grid.size();
    out.lower.assign(m, kNaN);
    out.upper.assign(m, kNaN);
    if (m == 0) return out;
    const double t0 = t_grid.front();
    const double t_back = t_grid.back();

    // Dense population path once, for the growth-rate quadrature.
    StepControl pop_ctl;
    pop_ctl.rtol = std::min(ctl.rtol, 1e-9);
    pop_ctl.atol = 1e-12;
    pop_ctl.initial_step = ctl.initial_step;
    auto pop_rhs = [&ap](double, const std::array<double, 1>& y) {
        return std::array<double, 1>{allee_rhs(ap, y[0])};
    };
    auto pop = integrate_dopri5<1>(pop_rhs, {ap.labour0}, t0, t_back, pop_ctl);

    std::vector<double> n_at(pop.size());
    std::vector<double> cum(pop.size(), 0.0);  // integral of n over [t0, t_i]
    for (std::size_t i = 0; i < pop.size(); ++i)
        n_at[i] = growth_rate(ap, std::max(pop.y[i][0], 0.0));
    for (std::size_t i = 1; i < pop.size(); ++i)
        cum[i] = cum[i - 1] +
                 0.5 * (pop.t[i] - pop.t[i - 1]) * (n_at[i - 1] + n_at[i]);

    // lower envelope: k0 exp(-(delta (t - t0) + integral of n))
    for (std::size_t j = 0; j < m; ++j) {
        double t = std::min(t_grid[j], pop.t.back());
        auto it = std::upper_bound(pop.t.begin(), pop.t.end(), t);
        std::size_t hi = std::min<std::size_t>(it - pop.t.begin(), pop.size() - 1);
        std::size_t lo = hi > 0 ? hi - 1 : 0;
        double n_here = growth_rate(ap, std::max(hermite_eval(pop, t)[0], 0.0));
        double integral = cum[lo] + 0.5 * (t - pop.t[lo]) * (n_at[lo] + n_here);
        out.lower[j] = k0 * std::exp(-(rp.delta * (t_grid[j] - t0) + integral));
    }

    // upper envelope: zero-consumption solution of dk = f(k) - (delta + n) k,
    // integrated jointly with labour and landed exactly on the grid times.
    auto solow_rhs = [&](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        double k = y[0], L = y[1];
        if (!(k > 0.0) || !(L >= 0.0)) return {kNaN, kNaN};
        double n = growth_rate(ap, L);
        return {intensive_output(spec, k) - (rp.delta + n) * k, allee_rhs(ap, L)};
    };
    auto guard = [](double, const std::array<double, 2>& y) -> std::optional<int> {
        return y[0] > kOverflowGuard ? std::optional<int>(kTagBlowUp) : std::nullopt;
    };
    auto solow = integrate_dopri5_at<2>(solow_rhs, {k0, ap.labour0}, t0, t_grid, ctl,
                                        guard);
    for (std::size_t i = 0; i < solow.size(); ++i) out.upper[i] = solow.y[i][0];
    return out;
}

// Fill every derived column; envelope entries hold NaN where undefined.
void enrich(Trajectory& traj, const ProductionSpec& spec, const RamseyParams& rp,
            const AlleeParams& ap, const StepControl& ctl) {
    std::size_t m = traj.size();
    traj.growth.resize(m);
    traj.x.resize(m);
    traj.z.resize(m);
    traj.savings_rate.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double k = traj.k[i], c = traj.c[i], L = traj.labour[i];
        traj.growth[i] = L >= 0.0 ? growth_rate(ap, L) : kNaN;
        if (k > 0.0) {
            double f = intensive_output(spec, k);
            traj.x[i] = c / k;
            traj.z[i] = k / f;
            traj.savings_rate[i] = f > 0.0 ? (f - c) / f : kNaN;
        } else {
            traj.x[i] = traj.z[i] = traj.savings_rate[i] = kNaN;
        }
    }
    if (m == 0) return;

    AlleeParams ap0 = ap;
    ap0.labour0 = traj.labour.front();
    auto kb = capital_bounds_impl(spec, rp, ap0, traj.k.front(), traj.t, ctl);
    traj.k_lower = std::move(kb.lower);
    traj.k_upper = std::move(kb.upper);
    auto cb = consumption_bounds(spec, rp, ap0, traj);
    traj.c_lower = std::move(cb.lower);
    traj.c_upper = std::move(cb.upper);
}

}  // namespace

Trajectory integrate_full(const ProductionSpec& spec, const RamseyParams& rp,
                          const AlleeParams& ap, const EconomyState& initial,
                          double t_end, const StepControl& ctl) {
    if (!(initial.k > 0.0)) throw DomainError("integrate_full needs k0 > 0");
    if (!(initial.c >= 0.0)) throw DomainError("integrate_full needs c0 >= 0");
    if (!(initial.labour > 0.0)) throw DomainError("integrate_full needs labour0 > 0");
    Trajectory traj = from_raw(integrate_raw(spec, rp, ap, initial, t_end, ctl));
    enrich(traj, spec, rp, ap, ctl);
    return traj;
}

CapitalBounds capital_bounds(const ProductionSpec& spec, const RamseyParams& rp,
                             const AlleeParams& ap, double k0,
                             std::span<const double> t_grid, const StepControl& ctl) {
    if (!(k0 > 0.0)) throw DomainError("capital_bounds needs k0 > 0");
    return capital_bounds_impl(spec, rp, ap, k0, t_grid, ctl);
}

ConsumptionBounds consumption_bounds(const ProductionSpec& spec,
                                     const RamseyParams& rp, const AlleeParams& ap,
                                     const Trajectory& traj) {
    ConsumptionBounds out;
    const std::size_t m = traj.size();
    out.lower.assign(m, kNaN);
    out.upper.assign(m, kNaN);
    if (m == 0) return out;

    std::vector<double> k_upper = traj.k_upper;
    if (k_upper.size() != m)
        k_upper = capital_bounds(spec, rp, ap, traj.k.front(), traj.t).upper;
    for (std::size_t i = 0; i < m; ++i)
        out.upper[i] = std::isfinite(k_upper[i]) && k_upper[i] >= 0.0
                           ? intensive_output(spec, k_upper[i])
                           : kNaN;

    const double c0 = traj.c.front();
    const double L0 = traj.labour.front();
    const double t0 = traj.t.front();
    const double k0 = traj.k.front();
    const double n_inf = classify_regime(ap).n_infinity;
    double B = kNaN;
    try {
        double k_star = solow_equilibrium(spec, rp.delta, n_inf);
        B = marginal_product(spec, k0 < k_star ? k_star : k0);
    } catch (const Error&) {
        // no Solow equilibrium (delta + n_inf <= 0 or out of range): the
        // lower envelope has no finite anchor, leave NaN
    }
    if (std::isfinite(B)) {
        for (std::size_t i = 0; i < m; ++i) {
            double L = traj.labour[i];
            out.lower[i] = L > 0.0
                               ? c0 *
                                     std::exp(rp.sigma * (B - rp.delta - rp.rho) *
                                              (traj.t[i] - t0)) *
                                     std::pow(L0 / L, rp.sigma)
                               : kNaN;
        }
    }
    return out;
}

double capital_from_share(const ProductionSpec& spec, double z) {
    if (!(z > 0.0)) throw DomainError("capital share z must be > 0");
    // k/f(k) is strictly increasing (its derivative is k h(k)/f^2 > 0).
    auto share = [&](double k) { return k / intensive_output(spec, k); };
    double lo = 1e-9, hi = 1e9;
    for (int i = 0; i < 60 && share(lo) > z; ++i) lo *= 0.25;
    for (int i = 0; i < 60 && share(hi) < z; ++i) hi *= 4.0;
    if (share(lo) > z || share(hi) < z)
        throw DomainError("z outside the range of k/f(k) for this technology");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (share(mid) < z ? lo : hi) = mid;
        if (hi - lo <= 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct RatioRhs {
    const ProductionSpec& spec;
    const RamseyParams& rp;
    const AlleeParams& ap;

    std::array<double, 3> operator()(double, const std::array<double, 3>& y) const {
        double z = y[0], x = y[1], L = y[2];
        if (!(z > 0.0) || !(x > 0.0) || !(L >= 0.0)) return {kNaN, kNaN, kNaN};
        double k = capital_from_share(spec, z);
        double fp = marginal_product(spec, k);
        double n = growth_rate(ap, L);
        double dz = z * (1.0 - fp * z) * (1.0 / z - (rp.delta + n) - x);
        double dx = x * ((rp.sigma * fp - 1.0 / z) +
                         (1.0 - rp.sigma) * (rp.delta + n) - rp.sigma * rp.rho + x);
        return {dz, dx, allee_rhs(ap, L)};
    }
};

RatioSeries ratio_series_from(const OdeSeries<3>& series) {
    if (series.reason == StopReason::StepUnderflow)
        throw IntegrationFailure("ratio system step size underflow", series.t.back());
    RatioSeries out;
    out.t = series.t;
    out.z.reserve(series.size());
    out.x.reserve(series.size());
    out.labour.reserve(series.size());
    for (const auto& y : series.y) {
        out.z.push_back(y[0]);
        out.x.push_back(y[1]);
        out.labour.push_back(y[2]);
    }
    return out;
}

}  // namespace

RatioSeries integrate_ratio(const ProductionSpec& spec, const RamseyParams& rp,
                            const AlleeParams& ap, double z0, double x0,
                            double t_end, const StepControl& ctl) {
    if (!(z0 > 0.0) || !(x0 > 0.0))
        throw DomainError("integrate_ratio needs z0 > 0 and x0 > 0");
    auto series = integrate_dopri5<3>(RatioRhs{spec, rp, ap}, {z0, x0, ap.labour0},
                                      0.0, t_end, ctl);
    return ratio_series_from(series);
}

RatioSeries integrate_ratio_at(const ProductionSpec& spec, const RamseyParams& rp,
                               const AlleeParams& ap, double z0, double x0,
                               std::span<const double> times,
                               const StepControl& ctl) {
    if (!(z0 > 0.0) || !(x0 > 0.0))
        throw DomainError("integrate_ratio needs z0 > 0 and x0 > 0");
    auto series = integrate_dopri5_at<3>(RatioRhs{spec, rp, ap}, {z0, x0, ap.labour0},
                                         0.0, times, ctl);
    return ratio_series_from(series);
}

namespace {

enum class Verdict { TooLow, TooHigh };

// Which way does a trial consumption diverge within the horizon? Capital
// collapsing to its floor marks the trial too high; consumption dying out or
// capital sitting above the interior steady state (drifting towards the
// zero-consumption point, which lies strictly above it) marks it too low.
Verdict classify_shot(const ProductionSpec& spec, const RamseyParams& rp,
                      const AlleeParams& ap, const EconomyState& anchor,
                      double c_trial, double horizon, double k_inf,
                      const StepControl& ctl) {
    EconomyState s = anchor;
    s.c = c_trial;
    auto raw = integrate_raw(spec, rp, ap, s, anchor.t + horizon, ctl);
    switch (termination_from(raw)) {
        case Termination::CapitalFloor: return Verdict::TooHigh;
        case Termination::ConsumptionFloor: return Verdict::TooLow;
        case Termination::BlowUp: return Verdict::TooLow;
        default: break;
    }
    return raw.y.back()[0] > k_inf ? Verdict::TooLow : Verdict::TooHigh;
}

struct Bracket {
    double lo, hi;  // consumption bracket straddling the saddle value
};

Bracket bisect_stage(const ProductionSpec& spec, const RamseyParams& rp,
                     const AlleeParams& ap, const EconomyState& anchor,
                     double horizon, double k_inf, const StepControl& ctl) {
    double lo = 0.0;
    double hi = intensive_output(spec, anchor.k) * (1.0 - 1e-12);
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket exhausted at double precision
        if (classify_shot(spec, rp, ap, anchor, mid, horizon, k_inf, ctl) ==
            Verdict::TooLow)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

double saddle_target_k(const ProductionSpec& spec, const RamseyParams& rp,
                       const AlleeParams& ap) {
    double n_inf = classify_regime(ap).n_infinity;
    try {
        return case2_steady_state(spec, rp, n_inf).k_inf;
    } catch (const Error& e) {
        throw NoSaddlePathError(std::string("no interior steady state to shoot at: ") +
                                e.what());
    }
}

}  // namespace

double shoot_initial_consumption(const ProductionSpec& spec, const RamseyParams& rp,
                                 const AlleeParams& ap, double k0,
                                 double t_horizon) {
    if (!(k0 > 0.0)) throw DomainError("shooting needs k0 > 0");
    double horizon = t_horizon > 0.0 ? t_horizon : 20.0 / rp.rho;
    double k_inf = saddle_target_k(spec, rp, ap);
    EconomyState anchor{0.0, k0, 0.0, ap.labour0};
    Bracket br = bisect_stage(spec, rp, ap, anchor, horizon, k_inf, StepControl{});
    return 0.5 * (br.lo + br.hi);
}

Trajectory saddle_path(const ProductionSpec& spec, const RamseyParams& rp,
                       const AlleeParams& ap, double k0, double t_end,
                       const StepControl& ctl, double stage_horizon) {
    if (!(k0 > 0.0)) throw DomainError("saddle_path needs k0 > 0");
    if (!(t_end > 0.0)) throw DomainError("saddle_path needs t_end > 0");
    const double H = stage_horizon > 0.0 ? stage_horizon : 20.0 / rp.rho;
    const double k_inf = saddle_target_k(spec, rp, ap);
    // The bracket endpoints agree until the unstable mode has amplified their
    // ulp-scale separation to this relative size; integrator noise between two
    // runs of the same system sits around the local tolerance, so cut well
    // above it.
    const double tau_cut = std::max(100.0 * ctl.rtol, 1e-12);

    OdeSeries<3> glued;
    EconomyState anchor{0.0, k0, 0.0, ap.labour0};
    int stages = 0;
    while (anchor.t < t_end * (1.0 - 1e-12)) {
        if (++stages > 100000)
            throw IntegrationFailure("saddle staging stalled", anchor.t);
        double span = std::min(H, t_end - anchor.t);
        Bracket br = bisect_stage(spec, rp, ap, anchor, span, k_inf, ctl);

        // Integrate both bracket endpoints: they straddle the saddle path and
        // shadow it until the unstable mode separates them. Keep the piece
        // only while the shadows still agree; past that point neither can be
        // trusted, so re-anchor and shoot again.
        EconomyState lo_state = anchor;
        lo_state.c = br.lo;
        auto piece = integrate_raw(spec, rp, ap, lo_state, anchor.t + span, ctl);
        EconomyState hi_state = anchor;
        hi_state.c = br.hi;
        auto mate = integrate_raw(spec, rp, ap, hi_state, anchor.t + span, ctl);

        std::size_t cut = 0;
        for (std::size_t i = 0; i < piece.size(); ++i) {
            if (piece.t[i] > mate.t.back()) break;
            auto other = hermite_eval<3>(mate, piece.t[i]);
            double k_scale = std::max(std::fabs(piece.y[i][0]), kCapitalFloor);
            double c_scale = std::max(std::fabs(piece.y[i][1]), kConsumptionFloor);
            if (std::fabs(piece.y[i][0] - other[0]) > tau_cut * k_scale ||
                std::fabs(piece.y[i][1] - other[1]) > tau_cut * c_scale)
                break;
            cut = i;
        }
        if (cut == 0)
            throw NoSaddlePathError(
                "shooting bracket endpoints separate within one step; the saddle "
                "cannot be tracked at this tolerance");

        if (glued.size() > 0) {
            // the seam sample is replaced so the stored (state, derivative)
            // pairs describe the kept path going forward
            glued.t.pop_back();
            glued.y.pop_back();
            glued.dy.pop_back();
        }
        glued.t.insert(glued.t.end(), piece.t.begin(), piece.t.begin() + cut + 1);
        glued.y.insert(glued.y.end(), piece.y.begin(), piece.y.begin() + cut + 1);
        glued.dy.insert(glued.dy.end(), piece.dy.begin(), piece.dy.begin() + cut + 1);

        bool kept_all = cut + 1 == piece.size();
        if (kept_all && piece.reason != StopReason::ReachedEnd) {
            // both shadows ran into the same guard while still agreeing: the
            // saddle path itself leaves the domain, stop honestly
            glued.reason = piece.reason;
            glued.guard_tag = piece.guard_tag;
            break;
        }
        glued.reason = StopReason::ReachedEnd;
        glued.guard_tag = 0;

        anchor.t = glued.t.back();
        anchor.k = glued.y.back()[0];
        anchor.c = glued.y.back()[1];
        anchor.labour = glued.y.back()[2];
    }

    Trajectory traj = from_raw(glued);
    enrich(traj, spec, rp, ap, ctl);
    return traj;
}

WelfareResult welfare(const RamseyParams& rp, const Trajectory& traj) {
    WelfareResult res;
    for (double c : traj.c) {
        if (c <= 0.0 && rp.sigma <= 1.0) {
            res.value = -std::numeric_limits<double>::infinity();
            res.note = "zero consumption with sigma <= 1: utility integrand unbounded";
            return res;
        }
    }
    auto u = [&](double c) {
        c = std::max(c, 0.0);
        if (rp.sigma == 1.0) return std::log(c);
        double e = 1.0 - 1.0 / rp.sigma;
        return (std::pow(c, e) - 1.0) / e;
    };
    double acc = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        double a = std::exp(-rp.rho * traj.t[i - 1]) * u(traj.c[i - 1]);
        double b = std::exp(-rp.rho * traj.t[i]) * u(traj.c[i]);
        acc += 0.5 * (traj.t[i] - traj.t[i - 1]) * (a + b);
    }
    res.value = acc;
    return res;
}

std::vector<double> transversality_residual(const RamseyParams& rp,
                                            const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.k[i] == 0.0) {
            out.push_back(0.0);
            continue;
        }
        out.push_back(std::exp(-rp.rho * traj.t[i]) *
                      std::pow(traj.c[i], -1.0 / rp.sigma) * traj.k[i]);
    }
    return out;
}

}  // namespace ramsey
