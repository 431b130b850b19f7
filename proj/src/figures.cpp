#include "ramsey/figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include "ramsey/csv.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/production.hpp"
#include "ramsey/svg.hpp"

namespace ramsey {

namespace {

double sample_linear(const std::vector<double>& ts, const std::vector<double>& vs,
                     double t) {
    if (ts.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (t <= ts.front()) return vs.front();
    if (t >= ts.back()) return vs.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

void write_pair_csv(const std::string& path, const char* header,
                    const std::vector<double>& t, const std::vector<double>& a,
                    const std::vector<double>& b) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << header << '\n';
    for (std::size_t i = 0; i < t.size(); ++i)
        out << format_double(t[i]) << ',' << format_double(a[i]) << ','
            << format_double(b[i]) << '\n';
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace

FigureReport reproduce_figures(const ScenarioConfig& base, const std::string& out_dir,
                               bool svg) {
    FigureReport report;
    const auto& spec = base.production;
    const auto& econ = base.economy;
    const StepControl ctl = base.step_control();
    const double t_end = base.solver.t_end;

    AlleeParams below = base.population;
    if (!(below.labour0 < below.threshold))
        below = AlleeParams(below.rate, below.threshold, below.capacity,
                            0.5 * below.threshold);
    AlleeParams above(base.population.rate, base.population.threshold,
                      base.population.capacity,
                      0.5 * (base.population.threshold + base.population.capacity));

    Trajectory lo = saddle_path(spec, econ, below, base.initial.k0, t_end, ctl);
    Trajectory hi = saddle_path(spec, econ, above, base.initial.k0, t_end, ctl);
    report.below_k_end = lo.k.back();
    report.below_c_end = lo.c.back();
    report.above_k_end = hi.k.back();
    report.above_c_end = hi.c.back();

    // common plotting grid for the two saddle runs
    const std::size_t grid_n = 2001;
    std::vector<double> grid(grid_n), k_lo(grid_n), k_hi(grid_n), c_lo(grid_n),
        c_hi(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        double t = t_end * static_cast<double>(i) / static_cast<double>(grid_n - 1);
        grid[i] = t;
        k_lo[i] = sample_linear(lo.t, lo.k, t);
        k_hi[i] = sample_linear(hi.t, hi.k, t);
        c_lo[i] = sample_linear(lo.t, lo.c, t);
        c_hi[i] = sample_linear(hi.t, hi.c, t);
    }

    report.k_csv = out_dir + "/figure1.csv";
    report.c_csv = out_dir + "/figure2.csv";
    write_pair_csv(report.k_csv, "t,k_below,k_above", grid, k_lo, k_hi);
    write_pair_csv(report.c_csv, "t,c_below,c_above", grid, c_lo, c_hi);

    // capital escape: population rate above depreciation, fixed consumption start
    AlleeParams runaway(econ.delta + 0.01, below.threshold, below.capacity,
                        below.labour0);
    EconomyState init{0.0, base.initial.k0,
                      0.5 * intensive_output(spec, base.initial.k0), runaway.labour0};
    double long_end = std::max(3.0 * t_end, 6000.0);
    Trajectory esc = integrate_full(spec, econ, runaway, init, long_end, ctl);
    report.blowup_termination = esc.termination;
    report.blowup_t_last = esc.t.back();

    report.blowup_csv = out_dir + "/figure3.csv";
    {
        std::ofstream out(report.blowup_csv, std::ios::binary);
        if (!out) throw Error("cannot open '" + report.blowup_csv + "' for writing");
        out << "t,k,c,L\n";
        for (std::size_t i = 0; i < esc.size(); ++i)
            out << format_double(esc.t[i]) << ',' << format_double(esc.k[i]) << ','
                << format_double(esc.c[i]) << ',' << format_double(esc.labour[i])
                << '\n';
        out.flush();
        if (!out) throw Error("write to '" + report.blowup_csv + "' failed");
    }

    if (svg) {
        write_svg_plot_file(out_dir + "/figure1.svg", "capital paths", "t", "k",
                            {{"L0 below threshold", grid, k_lo},
                             {"L0 above threshold", grid, k_hi}});
        write_svg_plot_file(out_dir + "/figure2.svg", "consumption paths", "t", "c",
                            {{"L0 below threshold", grid, c_lo},
                             {"L0 above threshold", grid, c_hi}});
        write_svg_plot_file(out_dir + "/figure3.svg", "capital escape", "t", "value",
                            {{"k", esc.t, esc.k},
                             {"c", esc.t, esc.c},
                             {"L", esc.t, esc.labour}});
    }

    return report;
}

}  // namespace ramsey
