#include "ramsey/population.hpp"

#include <cmath>

#include "ramsey/errors.hpp"

namespace ramsey {

AlleeParams::AlleeParams(double rate_, double threshold_, double capacity_,
                         double labour0_)
    : rate(rate_), threshold(threshold_), capacity(capacity_), labour0(labour0_) {
    if (!(rate > 0.0)) throw ParameterDomainError("Allee rate must be > 0");
    if (!(threshold > 0.0 && threshold < capacity))
        throw ParameterDomainError("need 0 < threshold < capacity");
    if (!(labour0 > 0.0)) throw ParameterDomainError("initial labour must be > 0");
}

const char* to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::BelowThreshold: return "below_threshold";
        case RegimeTag::MidLow: return "mid_low";
        case RegimeTag::MidHigh: return "mid_high";
        case RegimeTag::AboveCapacity: return "above_capacity";
        case RegimeTag::Fixed: return "fixed";
    }
    return "?";
}

double growth_rate(const AlleeParams& params, double labour) {
    if (!(labour >= 0.0)) throw DomainError("growth_rate needs labour >= 0");
    return params.rate * (1.0 - labour / params.capacity) *
           (labour / params.threshold - 1.0);
}

Regime classify_regime(const AlleeParams& params) {
    const double L0 = params.labour0;
    const double mid = 0.5 * (params.threshold + params.capacity);
    if (L0 == params.threshold || L0 == params.capacity)
        return {RegimeTag::Fixed, 0.0, 0.0};
    if (L0 < params.threshold)
        // L decays to 0 and n decreases monotonically to -rate.
        return {RegimeTag::BelowThreshold, -params.rate, params.rate};
    if (L0 > params.capacity)
        // L decays to capacity from above; |n| is largest at the start.
        return {RegimeTag::AboveCapacity, 0.0, std::abs(growth_rate(params, L0))};
    // Interior growth towards capacity; n peaks at the midpoint of
    // (threshold, capacity), which bounds n(t) wherever the path starts.
    double eta = growth_rate(params, mid);
    return {L0 <= mid ? RegimeTag::MidLow : RegimeTag::MidHigh, 0.0, eta};
}

namespace {

PopulationSeries to_series(const OdeSeries<1>& raw, const AlleeParams& params) {
    PopulationSeries s;
    s.t = raw.t;
    s.labour.reserve(raw.size());
    s.growth.reserve(raw.size());
    for (const auto& y : raw.y) {
        s.labour.push_back(y[0]);
        s.growth.push_back(growth_rate(params, std::max(y[0], 0.0)));
    }
    return s;
}

OdeSeries<1> integrate_raw(const AlleeParams& params, double t_end, double rtol,
                           double atol) {
    StepControl ctl;
    ctl.rtol = rtol;
    ctl.atol = atol;
    auto rhs = [&params](double, const std::array<double, 1>& y) {
        double L = y[0];
        return std::array<double, 1>{params.rate * L * (1.0 - L / params.capacity) *
                                     (L / params.threshold - 1.0)};
    };
    auto series = integrate_dopri5<1>(rhs, {params.labour0}, 0.0, t_end, ctl);
    if (series.reason == StopReason::StepUnderflow)
        throw IntegrationFailure("population step size underflow", series.t.back());
    return series;
}

}  // namespace

PopulationSeries integrate_population(const AlleeParams& params, double t_end,
                                      double rtol, double atol) {
    if (!(t_end >= 0.0)) throw DomainError("t_end must be >= 0");
    return to_series(integrate_raw(params, t_end, rtol, atol), params);
}

std::optional<double> crossing_time(const AlleeParams& params, double level,
                                    double t_end, double rtol) {
    if (!(level > 0.0)) throw DomainError("crossing level must be > 0");
    if (params.labour0 == level) return 0.0;

    auto series = integrate_raw(params, t_end, rtol, 1e-12);
    for (std::size_t i = 1; i < series.size(); ++i) {
        double a = series.y[i - 1][0] - level;
        double b = series.y[i][0] - level;
        if (a == 0.0) return series.t[i - 1];
        if (a * b > 0.0) continue;
        // Bisect on the cubic Hermite interpolant inside the bracketing step.
        double lo = series.t[i - 1], hi = series.t[i];
        bool rising = b > a;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double v = hermite_eval(series, mid)[0] - level;
            if ((v < 0.0) == rising)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

}  // namespace ramsey
