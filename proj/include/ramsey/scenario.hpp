#pragma once

// Scenario documents: a flat dotted-key `key = value` text format (UTF-8,
// `#` comments). Unknown keys are rejected; missing required keys and
// invariant violations raise ParseError naming the key (and line when the
// text supplies one).

#include <optional>
#include <string>
#include <vector>

#include "ramsey/dynamics.hpp"
#include "ramsey/population.hpp"
#include "ramsey/production.hpp"

namespace ramsey {

struct SolverConfig {
    double t_end = 2000.0;
    double rtol = 1e-8;
    double atol = 1e-10;
};

struct OutputConfig {
    std::string csv;      // trajectory CSV path ("" -> subcommand default)
    std::string svg;      // plot path ("" -> none unless --svg)
    int stride = 1;       // emit every Nth sample (the last one always)
};

struct InitialConfig {
    double k0 = 0.0;
    double c0 = 0.0;
    bool shoot = false;  // true when the document says `initial.c0 = shoot`
};

struct SweepAxisConfig {
    std::string key;             // dotted key of the swept parameter
    std::vector<double> values;  // grid values in document order
};

struct ScenarioConfig {
    ProductionSpec production;
    RamseyParams economy{1.0, 1.0, 1.0};  // placeholder; parse overwrites
    AlleeParams population{1.0, 1.0, 2.0, 1.0};
    InitialConfig initial;
    SolverConfig solver;
    OutputConfig output;
    std::vector<SweepAxisConfig> sweep;  // up to two axes

    StepControl step_control() const {
        StepControl ctl;
        ctl.rtol = solver.rtol;
        ctl.atol = solver.atol;
        return ctl;
    }
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Canonical emission; parse_config(emit_config(cfg)) reproduces cfg exactly
// (values printed with 17 significant digits).
std::string emit_config(const ScenarioConfig& cfg);

// True when `key` names a scalar a sweep may vary (economy.*, population.*,
// initial.k0/c0, production.alpha/tau).
bool is_sweep_key(const std::string& key);

// Assigns one such scalar, re-running the usual parameter validation.
// Throws ParameterDomainError on an unknown key or a value the target
// parameter set rejects.  Setting initial.c0 clears the shoot flag.
void set_numeric_key(ScenarioConfig& cfg, const std::string& key, double value);

}  // namespace ramsey
