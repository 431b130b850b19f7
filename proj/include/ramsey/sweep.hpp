#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ramsey/dynamics.hpp"
#include "ramsey/population.hpp"
#include "ramsey/scenario.hpp"

namespace ramsey {

enum class SweepMode { Serial, Parallel };

struct SweepPoint {
    std::vector<double> values;  // one per axis, same order as SweepResult::keys
    RegimeTag regime = RegimeTag::Fixed;
    double k_inf = 0, c_inf = 0, x_inf = 0;  // case-II rest point, NaN if absent
    double d_c = 0, d_x = 0;                 // NaN unless delta > rate
    double k_end = 0, c_end = 0;
    Termination termination = Termination::ReachedEnd;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<std::string> keys;
    std::vector<std::size_t> shape;  // values per axis
    std::vector<SweepPoint> points;  // row-major over shape
    std::size_t failures = 0;
};

// Evaluates the config's sweep grid (row-major, axis1 outermost).  Each point
// re-validates parameters, classifies the population regime, computes the
// case-II rest point and the n-infinity gaps where defined, then simulates
// (saddle shooting when initial.c0 = shoot).  A point that throws is recorded
// with its message; the grid always comes back full size in grid order,
// whichever mode ran it.
SweepResult run_sweep(const ScenarioConfig& base, SweepMode mode);

// One row per point; `# partial: <n> of <m> points failed` footer when any did.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_csv_file(const std::string& path, const SweepResult& result);

}  // namespace ramsey
