#pragma once

#include <string>

#include "ramsey/dynamics.hpp"
#include "ramsey/scenario.hpp"

namespace ramsey {

struct FigureReport {
    // saddle-path runs with labour starting below / above the threshold
    double below_k_end = 0, below_c_end = 0;
    double above_k_end = 0, above_c_end = 0;
    // run with the population rate pushed past delta (capital escapes)
    Termination blowup_termination = Termination::ReachedEnd;
    double blowup_t_last = 0;
    std::string k_csv, c_csv, blowup_csv;
};

// Three data files in `out_dir`:
//   figure1.csv  t,k_below,k_above      capital paths for the two labour starts
//   figure2.csv  t,c_below,c_above      consumption paths, same runs
//   figure3.csv  t,k,c,L                rate = delta + 0.01, fixed c0, long run
// The first two use saddle shooting from the config's k0; the third holds
// c0 = f(k0)/2 (no saddle exists once capital grows without bound) and stops
// at the overflow guard.  With `svg` set, matching .svg plots land next to
// the .csv files.
FigureReport reproduce_figures(const ScenarioConfig& base, const std::string& out_dir,
                               bool svg);

}  // namespace ramsey
