#include "ramsey/sweep.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "ramsey/csv.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/steadystate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ramsey {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepPoint evaluate_point(const ScenarioConfig& base,
                          const std::vector<std::string>& keys,
                          const std::vector<double>& values) {
    SweepPoint pt;
    pt.values = values;
    pt.k_inf = pt.c_inf = pt.x_inf = pt.d_c = pt.d_x = kNan;
    pt.k_end = pt.c_end = kNan;
    try {
        ScenarioConfig cfg = base;
        for (std::size_t i = 0; i < keys.size(); ++i)
            set_numeric_key(cfg, keys[i], values[i]);

        Regime regime = classify_regime(cfg.population);
        pt.regime = regime.tag;

        try {
            SteadyState ss = case2_steady_state(cfg.production, cfg.economy,
                                                regime.n_infinity);
            pt.k_inf = ss.k_inf;
            pt.c_inf = ss.c_inf;
            pt.x_inf = ss.x_inf;
        } catch (const Error&) {
            // no interior rest point for these parameters; columns stay NaN
        }
        if (stable_regime(cfg.economy, cfg.population)) {
            try {
                pt.d_c = delta_c(cfg.production, cfg.economy, cfg.population.rate);
                pt.d_x = delta_x(cfg.production, cfg.economy, cfg.population.rate);
            } catch (const Error&) {
            }
        }

        Trajectory traj;
        if (cfg.initial.shoot) {
            traj = saddle_path(cfg.production, cfg.economy, cfg.population,
                               cfg.initial.k0, cfg.solver.t_end, cfg.step_control());
        } else {
            EconomyState init{0.0, cfg.initial.k0, cfg.initial.c0,
                              cfg.population.labour0};
            traj = integrate_full(cfg.production, cfg.economy, cfg.population, init,
                                  cfg.solver.t_end, cfg.step_control());
        }
        pt.k_end = traj.k.back();
        pt.c_end = traj.c.back();
        pt.termination = traj.termination;
    } catch (const std::exception& e) {
        pt.failed = true;
        pt.error = e.what();
    }
    return pt;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

SweepResult run_sweep(const ScenarioConfig& base, SweepMode mode) {
    if (base.sweep.empty()) throw Error("config defines no sweep axes");

    SweepResult result;
    for (const auto& ax : base.sweep) {
        result.keys.push_back(ax.key);
        result.shape.push_back(ax.values.size());
    }
    std::size_t total = 1;
    for (std::size_t s : result.shape) total *= s;
    result.points.resize(total);

    auto values_at = [&](std::size_t flat) {
        std::vector<double> vals(result.shape.size());
        for (std::size_t a = result.shape.size(); a-- > 0;) {
            vals[a] = base.sweep[a].values[flat % result.shape[a]];
            flat /= result.shape[a];
        }
        return vals;
    };

    if (mode == SweepMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(total); ++i) {
            std::size_t idx = static_cast<std::size_t>(i);
            result.points[idx] = evaluate_point(base, result.keys, values_at(idx));
        }
    } else {
        for (std::size_t i = 0; i < total; ++i)
            result.points[i] = evaluate_point(base, result.keys, values_at(i));
    }

    for (const auto& pt : result.points)
        if (pt.failed) ++result.failures;
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    for (const auto& key : result.keys) out << key << ',';
    out << "regime,k_inf,c_inf,x_inf,D_c,D_x,k_end,c_end,termination,status\n";
    for (const auto& pt : result.points) {
        for (double v : pt.values) out << format_double(v) << ',';
        if (pt.failed) {
            out << ",,,,,,,,," << csv_quote(pt.error) << '\n';
            continue;
        }
        out << to_string(pt.regime) << ',' << format_double(pt.k_inf) << ','
            << format_double(pt.c_inf) << ',' << format_double(pt.x_inf) << ','
            << format_double(pt.d_c) << ',' << format_double(pt.d_x) << ','
            << format_double(pt.k_end) << ',' << format_double(pt.c_end) << ','
            << to_string(pt.termination) << ",ok\n";
    }
    if (result.failures > 0)
        out << "# partial: " << result.failures << " of " << result.points.size()
            << " points failed\n";
}

void write_sweep_csv_file(const std::string& path, const SweepResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_sweep_csv(out, result);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace ramsey
