#pragma once

// Embedded Dormand-Prince 5(4) stepper with PI step-size control.
// Shared by the population and full-system integrations; records every
// accepted step together with the derivative there (FSAL), which gives a
// cubic-Hermite dense output for free.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace ramsey {

struct StepControl {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 1e-3;
    long max_steps = 20'000'000;
};

enum class StopReason { ReachedEnd, GuardStop, StepUnderflow };

template <std::size_t N>
struct OdeSeries {
    std::vector<double> t;
    std::vector<std::array<double, N>> y;
    std::vector<std::array<double, N>> dy;  // f(t_i, y_i) at each sample
    StopReason reason = StopReason::ReachedEnd;
    int guard_tag = 0;  // caller-defined tag when reason == GuardStop

    std::size_t size() const { return t.size(); }
};

namespace detail {

// Butcher tableau, classic DOPRI5 coefficients.
inline constexpr double A21 = 1.0 / 5;
inline constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
inline constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
inline constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                        A53 = 64448.0 / 6561, A54 = -212.0 / 729;
inline constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33,
                        A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                        A65 = -5103.0 / 18656;
inline constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                        B5 = -2187.0 / 6784, B6 = 11.0 / 84;
// b - bhat: weights of the embedded 4th-order error estimate.
inline constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695,
                        E4 = B4 - 393.0 / 640, E5 = B5 + 92097.0 / 339200,
                        E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;
inline constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

template <std::size_t N>
bool finite(const std::array<double, N>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace detail

// One trial step from (t, y) with derivative k1 = f(t, y) already known.
// On return y_out holds the 5th-order solution, k7 its derivative (FSAL),
// and err the scaled RMS error estimate against rtol/atol.
template <std::size_t N, class Rhs>
void dopri5_step(Rhs&& rhs, double t, double h, const std::array<double, N>& y,
                 const std::array<double, N>& k1, std::array<double, N>& y_out,
                 std::array<double, N>& k7, double& err, const StepControl& ctl) {
    using namespace detail;
    std::array<double, N> tmp, k2, k3, k4, k5, k6;

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * A21 * k1[i];
    k2 = rhs(t + C2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    k3 = rhs(t + C3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    k4 = rhs(t + C4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    k5 = rhs(t + C5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                             A65 * k5[i]);
    k6 = rhs(t + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
        y_out[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                               B6 * k6[i]);
    k7 = rhs(t + h, y_out);

    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                        E6 * k6[i] + E7 * k7[i]);
        double sk = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y_out[i]));
        acc += (e / sk) * (e / sk);
    }
    err = std::sqrt(acc / N);
    if (!detail::finite(y_out) || !std::isfinite(err)) err = 1e10;
}

// Integrate rhs from (t0, y0) to t1, recording every accepted step.
// `guard` is evaluated on each accepted state; returning a tag stops the run
// with reason GuardStop after recording that state. Pass nullptr-like guard
// via the overload below when no guard is wanted.
template <std::size_t N, class Rhs, class Guard>
OdeSeries<N> integrate_dopri5(Rhs&& rhs, std::array<double, N> y0, double t0,
                              double t1, const StepControl& ctl, Guard&& guard) {
    OdeSeries<N> out;
    std::array<double, N> y = y0;
    std::array<double, N> k1 = rhs(t0, y);
    double t = t0;

    out.t.push_back(t);
    out.y.push_back(y);
    out.dy.push_back(k1);
    if (auto tag = guard(t, y)) {
        out.reason = StopReason::GuardStop;
        out.guard_tag = *tag;
        return out;
    }
    if (t1 <= t0) return out;

    // PI controller state (Hairer's dopri5 choice of exponents).
    constexpr double kAlpha = 0.7 / 5.0, kBeta = 0.4 / 5.0, kSafe = 0.9;
    double err_old = 1e-4;
    double h = std::min(ctl.initial_step, t1 - t0);
    bool rejected = false;

    for (long step = 0; step < ctl.max_steps; ++step) {
        if (t + h > t1) h = t1 - t;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
            out.reason = StopReason::StepUnderflow;
            return out;
        }

        std::array<double, N> y_new, k7;
        double err;
        dopri5_step(rhs, t, h, y, k1, y_new, k7, err, ctl);

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            out.t.push_back(t);
            out.y.push_back(y);
            out.dy.push_back(k1);
            if (auto tag = guard(t, y)) {
                out.reason = StopReason::GuardStop;
                out.guard_tag = *tag;
                return out;
            }
            if (t >= t1) return out;
            double fac = kSafe * std::pow(err + 1e-30, -kAlpha) * std::pow(err_old, kBeta);
            fac = std::clamp(fac, 0.2, rejected ? 1.0 : 10.0);
            err_old = std::max(err, 1e-4);
            rejected = false;
            h *= fac;
        } else {
            rejected = true;
            h *= std::clamp(kSafe * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    out.reason = StopReason::StepUnderflow;  // ran out of steps: report as failure
    return out;
}

template <std::size_t N, class Rhs>
OdeSeries<N> integrate_dopri5(Rhs&& rhs, std::array<double, N> y0, double t0,
                              double t1, const StepControl& ctl) {
    auto no_guard = [](double, const std::array<double, N>&) {
        return std::optional<int>{};
    };
    return integrate_dopri5<N>(std::forward<Rhs>(rhs), y0, t0, t1, ctl, no_guard);
}

// Like integrate_dopri5 but lands exactly on each requested time (sorted,
// >= t0) and records only those. A guard stop or underflow leaves the tail of
// `times` unfilled; the result is correspondingly shorter.
template <std::size_t N, class Rhs, class Guard>
OdeSeries<N> integrate_dopri5_at(Rhs&& rhs, std::array<double, N> y0, double t0,
                                 std::span<const double> times,
                                 const StepControl& ctl, Guard&& guard) {
    OdeSeries<N> out;
    if (times.empty()) return out;

    std::array<double, N> y = y0;
    std::array<double, N> k1 = rhs(t0, y);
    double t = t0;
    std::size_t next = 0;

    auto record_hits = [&]() -> bool {  // false -> guard fired
        while (next < times.size() &&
               times[next] <= t + 1e-12 * std::max(1.0, std::abs(t))) {
            out.t.push_back(times[next]);
            out.y.push_back(y);
            out.dy.push_back(k1);
            ++next;
            if (auto tag = guard(t, y)) {
                out.reason = StopReason::GuardStop;
                out.guard_tag = *tag;
                return false;
            }
        }
        return true;
    };
    if (!record_hits()) return out;

    constexpr double kAlpha = 0.7 / 5.0, kBeta = 0.4 / 5.0, kSafe = 0.9;
    double err_old = 1e-4;
    double h = ctl.initial_step;
    bool rejected = false;

    for (long step = 0; step < ctl.max_steps && next < times.size(); ++step) {
        double h_try = std::min(h, times[next] - t);
        if (h_try < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
            out.reason = StopReason::StepUnderflow;
            return out;
        }
        std::array<double, N> y_new, k7;
        double err;
        dopri5_step(rhs, t, h_try, y, k1, y_new, k7, err, ctl);

        if (err <= 1.0) {
            t += h_try;
            y = y_new;
            k1 = k7;
            if (!record_hits()) return out;
            double fac = kSafe * std::pow(err + 1e-30, -kAlpha) * std::pow(err_old, kBeta);
            fac = std::clamp(fac, 0.2, rejected ? 1.0 : 10.0);
            err_old = std::max(err, 1e-4);
            rejected = false;
            h = h_try * fac;
        } else {
            rejected = true;
            h = h_try * std::clamp(kSafe * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    if (next < times.size() && out.reason == StopReason::ReachedEnd)
        out.reason = StopReason::StepUnderflow;
    return out;
}

template <std::size_t N, class Rhs>
OdeSeries<N> integrate_dopri5_at(Rhs&& rhs, std::array<double, N> y0, double t0,
                                 std::span<const double> times,
                                 const StepControl& ctl) {
    auto no_guard = [](double, const std::array<double, N>&) {
        return std::optional<int>{};
    };
    return integrate_dopri5_at<N>(std::forward<Rhs>(rhs), y0, t0, times, ctl,
                                  no_guard);
}

// Cubic Hermite interpolation between the two samples bracketing `t`.
// Clamped to the series range.
template <std::size_t N>
std::array<double, N> hermite_eval(const OdeSeries<N>& s, double t) {
    if (s.t.empty()) return {};
    if (t <= s.t.front()) return s.y.front();
    if (t >= s.t.back()) return s.y.back();
    std::size_t hi = 1;
    {
        std::size_t lo = 0, up = s.t.size() - 1;
        while (up - lo > 1) {
            std::size_t mid = (lo + up) / 2;
            (s.t[mid] <= t ? lo : up) = mid;
        }
        hi = up;
    }
    std::size_t lo = hi - 1;
    double h = s.t[hi] - s.t[lo];
    double u = (t - s.t[lo]) / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = h00 * s.y[lo][i] + h10 * h * s.dy[lo][i] + h01 * s.y[hi][i] +
                 h11 * h * s.dy[hi][i];
    return out;
}

}  // namespace ramsey
