#include "ramsey/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct RawValue {
    std::string text;
    int line = 0;
    bool consumed = false;
};

class Doc {
public:
    explicit Doc(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::string s = trim(line);
            if (s.empty()) continue;
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected `key = value`", s, lineno);
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            if (key.empty()) throw ParseError("empty key", key, lineno);
            if (value.empty()) throw ParseError("empty value for key '" + key + "'", key, lineno);
            if (entries_.count(key))
                throw ParseError("duplicate key '" + key + "'", key, lineno);
            entries_[key] = RawValue{value, lineno, false};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const RawValue& require(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ParseError("missing required key '" + key + "'", key, 0);
        it->second.consumed = true;
        return it->second;
    }

    const RawValue* optional(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    void reject_unconsumed() const {
        for (const auto& [key, rv] : entries_)
            if (!rv.consumed)
                throw ParseError("unknown key '" + key + "'", key, rv.line);
    }

private:
    std::map<std::string, RawValue> entries_;
};

double parse_double(const RawValue& rv, const std::string& key) {
    const std::string& s = rv.text;
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("value '" + s + "' for key '" + key + "' is not a number",
                         key, rv.line);
    return v;
}

int parse_int(const RawValue& rv, const std::string& key) {
    const std::string& s = rv.text;
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("value '" + s + "' for key '" + key + "' is not an integer",
                         key, rv.line);
    return v;
}

std::vector<double> parse_double_list(const RawValue& rv, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(rv.text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::string s = trim(item);
        if (s.empty())
            throw ParseError("empty entry in list for key '" + key + "'", key, rv.line);
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ParseError("list entry '" + s + "' for key '" + key +
                                 "' is not a number", key, rv.line);
        out.push_back(v);
    }
    if (out.empty()) throw ParseError("empty list for key '" + key + "'", key, rv.line);
    return out;
}

ProductionSpec parse_production(Doc& doc) {
    const RawValue& kind_rv = doc.require("production.kind");
    ProductionKind kind;
    try {
        kind = production_kind_from_string(kind_rv.text);
    } catch (const ParameterDomainError& e) {
        throw ParseError(e.what(), "production.kind", kind_rv.line);
    }
    auto needs = [&](const char* key) -> double {
        return parse_double(doc.require(key), key);
    };
    auto forbid = [&](const char* key) {
        if (doc.has(key))
            throw ParseError(std::string("key '") + key + "' is not used by production kind '" +
                                 kind_rv.text + "'", key, doc.optional(key)->line);
    };
    try {
        switch (kind) {
            case ProductionKind::CES:
                return ProductionSpec::ces(needs("production.alpha"), needs("production.tau"));
            case ProductionKind::CobbDouglas:
                forbid("production.tau");
                return ProductionSpec::cobb_douglas(needs("production.alpha"));
            case ProductionKind::Log:
                forbid("production.alpha");
                forbid("production.tau");
                return ProductionSpec::log();
            case ProductionKind::Cara:
                forbid("production.alpha");
                forbid("production.tau");
                return ProductionSpec::cara();
        }
    } catch (const ParameterDomainError& e) {
        throw ParseError(e.what(), "production.kind", kind_rv.line);
    }
    throw ParseError("unreachable production kind", "production.kind", kind_rv.line);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    Doc doc(text);
    ScenarioConfig cfg;

    cfg.production = parse_production(doc);

    auto rho_rv = doc.require("economy.rho");
    auto delta_rv = doc.require("economy.delta");
    auto sigma_rv = doc.require("economy.sigma");
    try {
        cfg.economy = RamseyParams(parse_double(rho_rv, "economy.rho"),
                                   parse_double(delta_rv, "economy.delta"),
                                   parse_double(sigma_rv, "economy.sigma"));
    } catch (const ParameterDomainError& e) {
        throw ParseError(e.what(), "economy", rho_rv.line);
    }

    auto rate_rv = doc.require("population.rate");
    try {
        cfg.population = AlleeParams(
            parse_double(rate_rv, "population.rate"),
            parse_double(doc.require("population.threshold"), "population.threshold"),
            parse_double(doc.require("population.capacity"), "population.capacity"),
            parse_double(doc.require("population.labour0"), "population.labour0"));
    } catch (const ParameterDomainError& e) {
        throw ParseError(e.what(), "population", rate_rv.line);
    }

    auto k0_rv = doc.require("initial.k0");
    cfg.initial.k0 = parse_double(k0_rv, "initial.k0");
    if (!(cfg.initial.k0 > 0.0))
        throw ParseError("initial.k0 must be > 0", "initial.k0", k0_rv.line);
    auto c0_rv = doc.require("initial.c0");
    if (c0_rv.text == "shoot") {
        cfg.initial.shoot = true;
        cfg.initial.c0 = 0.0;
    } else {
        cfg.initial.c0 = parse_double(c0_rv, "initial.c0");
        if (!(cfg.initial.c0 >= 0.0))
            throw ParseError("initial.c0 must be >= 0 or `shoot`", "initial.c0",
                             c0_rv.line);
    }

    if (auto* rv = doc.optional("solver.t_end")) {
        cfg.solver.t_end = parse_double(*rv, "solver.t_end");
        if (!(cfg.solver.t_end >= 0.0))
            throw ParseError("solver.t_end must be >= 0", "solver.t_end", rv->line);
    }
    if (auto* rv = doc.optional("solver.rtol")) {
        cfg.solver.rtol = parse_double(*rv, "solver.rtol");
        if (!(cfg.solver.rtol > 0.0))
            throw ParseError("solver.rtol must be > 0", "solver.rtol", rv->line);
    }
    if (auto* rv = doc.optional("solver.atol")) {
        cfg.solver.atol = parse_double(*rv, "solver.atol");
        if (!(cfg.solver.atol > 0.0))
            throw ParseError("solver.atol must be > 0", "solver.atol", rv->line);
    }
    if (auto* rv = doc.optional("output.csv")) cfg.output.csv = rv->text;
    if (auto* rv = doc.optional("output.svg")) cfg.output.svg = rv->text;
    if (auto* rv = doc.optional("output.stride")) {
        cfg.output.stride = parse_int(*rv, "output.stride");
        if (cfg.output.stride < 1)
            throw ParseError("output.stride must be >= 1", "output.stride", rv->line);
    }

    if ((doc.has("sweep.axis2.key") || doc.has("sweep.axis2.values")) &&
        !doc.has("sweep.axis1.key")) {
        const RawValue& rv = doc.require(doc.has("sweep.axis2.key")
                                             ? "sweep.axis2.key"
                                             : "sweep.axis2.values");
        throw ParseError("sweep.axis2 given without sweep.axis1", "sweep.axis2.key",
                         rv.line);
    }
    for (const char* axis : {"sweep.axis1", "sweep.axis2"}) {
        std::string key_key = std::string(axis) + ".key";
        std::string values_key = std::string(axis) + ".values";
        auto* key_rv = doc.optional(key_key);
        auto* values_rv = doc.optional(values_key);
        if (!key_rv && !values_rv) continue;
        if (!key_rv || !values_rv)
            throw ParseError("sweep axis needs both .key and .values", key_key,
                             key_rv ? key_rv->line : values_rv->line);
        SweepAxisConfig ax;
        ax.key = key_rv->text;
        if (!is_sweep_key(ax.key))
            throw ParseError("'" + ax.key + "' is not a sweepable parameter", key_key,
                             key_rv->line);
        ax.values = parse_double_list(*values_rv, values_key);
        cfg.sweep.push_back(std::move(ax));
    }

    doc.reject_unconsumed();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file '" + path + "'", path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

bool is_sweep_key(const std::string& key) {
    static const char* keys[] = {
        "economy.rho",          "economy.delta",      "economy.sigma",
        "population.rate",      "population.threshold", "population.capacity",
        "population.labour0",   "initial.k0",         "initial.c0",
        "production.alpha",     "production.tau",
    };
    for (const char* k : keys)
        if (key == k) return true;
    return false;
}

void set_numeric_key(ScenarioConfig& cfg, const std::string& key, double value) {
    if (key == "economy.rho")
        cfg.economy = RamseyParams(value, cfg.economy.delta, cfg.economy.sigma);
    else if (key == "economy.delta")
        cfg.economy = RamseyParams(cfg.economy.rho, value, cfg.economy.sigma);
    else if (key == "economy.sigma")
        cfg.economy = RamseyParams(cfg.economy.rho, cfg.economy.delta, value);
    else if (key == "population.rate")
        cfg.population = AlleeParams(value, cfg.population.threshold,
                                     cfg.population.capacity, cfg.population.labour0);
    else if (key == "population.threshold")
        cfg.population = AlleeParams(cfg.population.rate, value,
                                     cfg.population.capacity, cfg.population.labour0);
    else if (key == "population.capacity")
        cfg.population = AlleeParams(cfg.population.rate, cfg.population.threshold,
                                     value, cfg.population.labour0);
    else if (key == "population.labour0")
        cfg.population = AlleeParams(cfg.population.rate, cfg.population.threshold,
                                     cfg.population.capacity, value);
    else if (key == "initial.k0") {
        if (!(value > 0.0)) throw ParameterDomainError("initial.k0 must be > 0");
        cfg.initial.k0 = value;
    } else if (key == "initial.c0") {
        if (!(value >= 0.0)) throw ParameterDomainError("initial.c0 must be >= 0");
        cfg.initial.c0 = value;
        cfg.initial.shoot = false;
    } else if (key == "production.alpha") {
        switch (cfg.production.kind) {
            case ProductionKind::CES:
                cfg.production = ProductionSpec::ces(value, cfg.production.tau);
                break;
            case ProductionKind::CobbDouglas:
                cfg.production = ProductionSpec::cobb_douglas(value);
                break;
            default:
                throw ParameterDomainError(
                    "production.alpha is not used by this production kind");
        }
    } else if (key == "production.tau") {
        if (cfg.production.kind != ProductionKind::CES)
            throw ParameterDomainError("production.tau is only used by the CES kind");
        cfg.production = ProductionSpec::ces(cfg.production.alpha, value);
    } else {
        throw ParameterDomainError("unknown sweep key '" + key + "'");
    }
}

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "production.kind = " << to_string(cfg.production.kind) << "\n";
    if (cfg.production.kind == ProductionKind::CES ||
        cfg.production.kind == ProductionKind::CobbDouglas)
        out << "production.alpha = " << format_g17(cfg.production.alpha) << "\n";
    if (cfg.production.kind == ProductionKind::CES)
        out << "production.tau = " << format_g17(cfg.production.tau) << "\n";
    out << "economy.rho = " << format_g17(cfg.economy.rho) << "\n";
    out << "economy.delta = " << format_g17(cfg.economy.delta) << "\n";
    out << "economy.sigma = " << format_g17(cfg.economy.sigma) << "\n";
    out << "population.rate = " << format_g17(cfg.population.rate) << "\n";
    out << "population.threshold = " << format_g17(cfg.population.threshold) << "\n";
    out << "population.capacity = " << format_g17(cfg.population.capacity) << "\n";
    out << "population.labour0 = " << format_g17(cfg.population.labour0) << "\n";
    out << "initial.k0 = " << format_g17(cfg.initial.k0) << "\n";
    if (cfg.initial.shoot)
        out << "initial.c0 = shoot\n";
    else
        out << "initial.c0 = " << format_g17(cfg.initial.c0) << "\n";
    out << "solver.t_end = " << format_g17(cfg.solver.t_end) << "\n";
    out << "solver.rtol = " << format_g17(cfg.solver.rtol) << "\n";
    out << "solver.atol = " << format_g17(cfg.solver.atol) << "\n";
    if (!cfg.output.csv.empty()) out << "output.csv = " << cfg.output.csv << "\n";
    if (!cfg.output.svg.empty()) out << "output.svg = " << cfg.output.svg << "\n";
    if (cfg.output.stride != 1) out << "output.stride = " << cfg.output.stride << "\n";
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
        std::string axis = "sweep.axis" + std::to_string(i + 1);
        out << axis << ".key = " << cfg.sweep[i].key << "\n";
        out << axis << ".values = ";
        for (std::size_t j = 0; j < cfg.sweep[i].values.size(); ++j) {
            if (j) out << ", ";
            out << format_g17(cfg.sweep[i].values[j]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace ramsey
