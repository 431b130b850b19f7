#pragma once

// Labour dynamics with a strong Allee effect:
//   dL/dt = rate * L * (1 - L/capacity) * (L/threshold - 1)
// Below the threshold the population collapses; between threshold and
// capacity it grows towards capacity; above capacity it declines to capacity.

#include <optional>
#include <vector>

#include "ramsey/integrate.hpp"

namespace ramsey {

struct AlleeParams {
    double rate = 0.0;       // intrinsic rate r > 0
    double threshold = 0.0;  // Allee threshold, 0 < threshold < capacity
    double capacity = 0.0;   // carrying capacity
    double labour0 = 0.0;    // initial labour > 0

    AlleeParams(double rate_, double threshold_, double capacity_, double labour0_);
};

enum class RegimeTag { BelowThreshold, MidLow, MidHigh, AboveCapacity, Fixed };

const char* to_string(RegimeTag tag);

struct Regime {
    RegimeTag tag;
    double n_infinity;  // limit of the population growth rate
    double eta;         // uniform bound: |n(t)| <= eta for all t
};

// n(L) = rate * (1 - L/capacity) * (L/threshold - 1); needs L >= 0.
double growth_rate(const AlleeParams& params, double labour);

// Classify by labour0 against threshold/capacity; see the Regime fields.
Regime classify_regime(const AlleeParams& params);

struct PopulationSeries {
    std::vector<double> t;
    std::vector<double> labour;
    std::vector<double> growth;  // n(L(t)) at each sample

    std::size_t size() const { return t.size(); }
};

// Adaptive integration over [0, t_end]; records every accepted step.
// Throws IntegrationFailure (with the last valid time) on step underflow.
PopulationSeries integrate_population(const AlleeParams& params, double t_end,
                                      double rtol = 1e-9, double atol = 1e-12);

// First time L(t) == level within [0, t_end], refined on the dense output;
// nullopt when the level is never crossed. level must be > 0.
std::optional<double> crossing_time(const AlleeParams& params, double level,
                                    double t_end = 2000.0, double rtol = 1e-9);

}  // namespace ramsey
