#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "ramsey/csv.hpp"
#include "ramsey/dynamics.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/figures.hpp"
#include "ramsey/population.hpp"
#include "ramsey/scenario.hpp"
#include "ramsey/steadystate.hpp"
#include "ramsey/svg.hpp"
#include "ramsey/sweep.hpp"

namespace fs = std::filesystem;
using namespace ramsey;

namespace {

struct Opts {
    std::string config;
    std::string out = ".";
    bool svg = false;
    double t_end = std::numeric_limits<double>::quiet_NaN();
    double rtol = std::numeric_limits<double>::quiet_NaN();
};

std::string join(const std::string& dir, const std::string& name) {
    fs::path p(name);
    if (p.is_absolute()) return name;
    return (fs::path(dir) / p).string();
}

Trajectory run_scenario(const ScenarioConfig& cfg) {
    if (cfg.initial.shoot)
        return saddle_path(cfg.production, cfg.economy, cfg.population, cfg.initial.k0,
                           cfg.solver.t_end, cfg.step_control());
    EconomyState init{0.0, cfg.initial.k0, cfg.initial.c0, cfg.population.labour0};
    return integrate_full(cfg.production, cfg.economy, cfg.population, init,
                          cfg.solver.t_end, cfg.step_control());
}

void maybe_write_svg(const ScenarioConfig& cfg, const Opts& o, const Trajectory& traj,
                     const std::string& fallback_name) {
    if (!o.svg && cfg.output.svg.empty()) return;
    std::string name = cfg.output.svg.empty() ? fallback_name : cfg.output.svg;
    std::string path = join(o.out, name);
    write_svg_plot_file(path, "trajectory", "t", "value",
                        {{"k", traj.t, traj.k},
                         {"c", traj.t, traj.c},
                         {"L", traj.t, traj.labour}});
    std::cout << "wrote " << path << "\n";
}

int run_simulate(const ScenarioConfig& cfg, const Opts& o) {
    Trajectory traj;
    if (cfg.solver.t_end > 0.0) traj = run_scenario(cfg);
    std::string path =
        join(o.out, cfg.output.csv.empty() ? "trajectory.csv" : cfg.output.csv);
    write_trajectory_csv_file(path, traj, cfg.output.stride);
    std::cout << "wrote " << path << " (" << traj.size() << " samples, "
              << to_string(traj.termination) << ")\n";
    if (traj.size() > 0) maybe_write_svg(cfg, o, traj, "trajectory.svg");
    return 0;
}

int run_steady_state(const ScenarioConfig& cfg) {
    Regime regime = classify_regime(cfg.population);
    std::cout << "regime = " << to_string(regime.tag)
              << " (n_inf = " << format_double(regime.n_infinity)
              << ", eta = " << format_double(regime.eta) << ")\n";
    for (double n_inf : {-cfg.population.rate, 0.0}) {
        SteadyState ss = case2_steady_state(cfg.production, cfg.economy, n_inf);
        std::cout << "n_inf = " << format_double(n_inf)
                  << ": k_inf = " << format_double(ss.k_inf)
                  << ", c_inf = " << format_double(ss.c_inf)
                  << ", x_inf = " << format_double(ss.x_inf)
                  << ", z_inf = " << format_double(ss.z_inf) << "\n";
    }
    std::cout << "D_c = "
              << format_double(
                     delta_c(cfg.production, cfg.economy, cfg.population.rate))
              << "\n";
    std::cout << "D_x = "
              << format_double(
                     delta_x(cfg.production, cfg.economy, cfg.population.rate))
              << "\n";
    return 0;
}

int run_bounds(const ScenarioConfig& cfg, const Opts& o) {
    Trajectory traj = run_scenario(cfg);
    std::size_t violations = 0, checked = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        double lo = traj.k_lower[i], hi = traj.k_upper[i];
        if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
        double eps = 1e-6 * (1.0 + hi);
        ++checked;
        if (traj.k[i] < lo - eps || traj.k[i] > hi + eps) ++violations;
    }
    std::string path = join(o.out, cfg.output.csv.empty() ? "bounds.csv" : cfg.output.csv);
    write_trajectory_csv_file(path, traj, cfg.output.stride);
    std::cout << "wrote " << path << "\n";
    std::cout << "sandwich violations: " << violations << " of " << checked
              << " samples\n";
    maybe_write_svg(cfg, o, traj, "bounds.svg");
    return 0;
}

int run_shoot(const ScenarioConfig& cfg, const Opts& o) {
    double c0 = shoot_initial_consumption(cfg.production, cfg.economy, cfg.population,
                                          cfg.initial.k0);
    std::cout << "c0 = " << format_double(c0) << "\n";
    Trajectory traj =
        saddle_path(cfg.production, cfg.economy, cfg.population, cfg.initial.k0,
                    cfg.solver.t_end, cfg.step_control());
    std::string path = join(o.out, cfg.output.csv.empty() ? "shoot.csv" : cfg.output.csv);
    write_trajectory_csv_file(path, traj, cfg.output.stride);
    std::cout << "wrote " << path << " (" << to_string(traj.termination) << ")\n";
    maybe_write_svg(cfg, o, traj, "shoot.svg");
    return 0;
}

int run_sweep_cmd(const ScenarioConfig& cfg, const Opts& o) {
    SweepResult result = run_sweep(cfg, SweepMode::Parallel);
    std::string path = join(o.out, cfg.output.csv.empty() ? "sweep.csv" : cfg.output.csv);
    write_sweep_csv_file(path, result);
    std::cout << "wrote " << path << " (" << result.points.size() << " points, "
              << result.failures << " failed)\n";
    if (result.failures == result.points.size()) {
        std::cerr << "error: every sweep point failed\n";
        return 1;
    }
    return 0;
}

int run_figures(const ScenarioConfig& cfg, const Opts& o) {
    bool svg = o.svg || !cfg.output.svg.empty();
    FigureReport report = reproduce_figures(cfg, o.out, svg);
    std::cout << "wrote " << report.k_csv << "\n";
    std::cout << "wrote " << report.c_csv << "\n";
    std::cout << "wrote " << report.blowup_csv << "\n";
    std::cout << "below-threshold endpoint: k = " << format_double(report.below_k_end)
              << ", c = " << format_double(report.below_c_end) << "\n";
    std::cout << "above-threshold endpoint: k = " << format_double(report.above_k_end)
              << ", c = " << format_double(report.above_c_end) << "\n";
    std::cout << "capital-escape run: " << to_string(report.blowup_termination)
              << " at t = " << format_double(report.blowup_t_last) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey growth model with Allee-effect population dynamics"};
    app.require_subcommand(1);

    Opts o;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config, "scenario config file")->required();
        cmd->add_option("--out", o.out, "output directory (default .)");
        cmd->add_flag("--svg", o.svg, "also write SVG plots");
        cmd->add_option("--t-end", o.t_end, "override solver.t_end");
        cmd->add_option("--rtol", o.rtol, "override solver.rtol");
        return cmd;
    };

    auto* sim = add_common(app.add_subcommand(
        "simulate", "integrate the full system and write the trajectory"));
    auto* steady = add_common(app.add_subcommand(
        "steady-state", "report rest points for n_inf in {-r, 0} plus the gaps"));
    auto* bounds = add_common(app.add_subcommand(
        "bounds", "write the trajectory with bound columns and check the sandwich"));
    auto* shoot = add_common(app.add_subcommand(
        "shoot", "find the saddle-path c0 for the configured k0"));
    auto* sweep = add_common(app.add_subcommand(
        "sweep", "evaluate the config's parameter grid, one summary row per point"));
    auto* figures = add_common(app.add_subcommand(
        "reproduce-figures", "run the capital/consumption/blow-up scenarios"));

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = load_config(o.config);
        if (!std::isnan(o.t_end)) {
            if (o.t_end < 0.0) throw Error("--t-end must be >= 0");
            cfg.solver.t_end = o.t_end;
        }
        if (!std::isnan(o.rtol)) {
            if (!(o.rtol > 0.0)) throw Error("--rtol must be > 0");
            cfg.solver.rtol = o.rtol;
        }
        fs::create_directories(o.out);

        if (*sim) return run_simulate(cfg, o);
        if (*steady) return run_steady_state(cfg);
        if (*bounds) return run_bounds(cfg, o);
        if (*shoot) return run_shoot(cfg, o);
        if (*sweep) return run_sweep_cmd(cfg, o);
        if (*figures) return run_figures(cfg, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
