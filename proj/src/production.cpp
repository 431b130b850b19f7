#include "ramsey/production.hpp"

#include <cmath>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

void require_positive_k(double k) {
    if (!(k > 0.0)) throw DomainError("production operations need k > 0");
}

}  // namespace

ProductionSpec ProductionSpec::ces(double alpha, double tau) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterDomainError("CES share alpha must lie in (0, 1)");
    if (!(tau < 1.0))
        throw ParameterDomainError("CES substitution tau must be < 1");
    if (tau == 0.0)
        throw ParameterDomainError(
            "CES tau = 0 rejected: the family is not defined there, use cobb_douglas");
    return {ProductionKind::CES, alpha, tau};
}

ProductionSpec ProductionSpec::cobb_douglas(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterDomainError("Cobb-Douglas share alpha must lie in (0, 1)");
    return {ProductionKind::CobbDouglas, alpha, 0.0};
}

ProductionSpec ProductionSpec::log() { return {ProductionKind::Log, 0.0, 0.0}; }

ProductionSpec ProductionSpec::cara() { return {ProductionKind::Cara, 0.0, 0.0}; }

const char* to_string(ProductionKind kind) {
    switch (kind) {
        case ProductionKind::CES: return "ces";
        case ProductionKind::CobbDouglas: return "cobb_douglas";
        case ProductionKind::Log: return "log";
        case ProductionKind::Cara: return "cara";
    }
    return "?";
}

ProductionKind production_kind_from_string(const std::string& name) {
    if (name == "ces") return ProductionKind::CES;
    if (name == "cobb_douglas") return ProductionKind::CobbDouglas;
    if (name == "log") return ProductionKind::Log;
    if (name == "cara") return ProductionKind::Cara;
    throw ParameterDomainError("unknown production kind '" + name + "'");
}

double intensive_output(const ProductionSpec& spec, double k) {
    if (!(k >= 0.0)) throw DomainError("production operations need k >= 0");
    switch (spec.kind) {
        case ProductionKind::CES:
            if (k == 0.0)
                return spec.tau > 0.0 ? std::pow(1.0 - spec.alpha, 1.0 / spec.tau) : 0.0;
            return std::pow(spec.alpha * std::pow(k, spec.tau) + 1.0 - spec.alpha,
                            1.0 / spec.tau);
        case ProductionKind::CobbDouglas:
            return std::pow(k, spec.alpha);
        case ProductionKind::Log:
            return std::log1p(k);
        case ProductionKind::Cara:
            return -std::expm1(-k);
    }
    return 0.0;
}

double marginal_product(const ProductionSpec& spec, double k) {
    require_positive_k(k);
    switch (spec.kind) {
        case ProductionKind::CES: {
            double base = spec.alpha * std::pow(k, spec.tau) + 1.0 - spec.alpha;
            return spec.alpha * std::pow(base, 1.0 / spec.tau - 1.0) *
                   std::pow(k, spec.tau - 1.0);
        }
        case ProductionKind::CobbDouglas:
            return spec.alpha * std::pow(k, spec.alpha - 1.0);
        case ProductionKind::Log:
            return 1.0 / (1.0 + k);
        case ProductionKind::Cara:
            return std::exp(-k);
    }
    return 0.0;
}

double second_derivative(const ProductionSpec& spec, double k) {
    require_positive_k(k);
    switch (spec.kind) {
        case ProductionKind::CES: {
            // f'(k) = alpha * g(k)^((1-tau)/tau) with g = alpha + (1-alpha) k^-tau
            double g = spec.alpha + (1.0 - spec.alpha) * std::pow(k, -spec.tau);
            return -spec.alpha * (1.0 - spec.alpha) * (1.0 - spec.tau) *
                   std::pow(k, -spec.tau - 1.0) *
                   std::pow(g, (1.0 - 2.0 * spec.tau) / spec.tau);
        }
        case ProductionKind::CobbDouglas:
            return spec.alpha * (spec.alpha - 1.0) * std::pow(k, spec.alpha - 2.0);
        case ProductionKind::Log:
            return -1.0 / ((1.0 + k) * (1.0 + k));
        case ProductionKind::Cara:
            return -std::exp(-k);
    }
    return 0.0;
}

double inverse_marginal(const ProductionSpec& spec, double y) {
    if (!(y > 0.0)) throw NoSolutionError("inverse_marginal needs y > 0");
    switch (spec.kind) {
        case ProductionKind::Log:
            // f' maps (0, inf) onto (0, 1); y = 1 is the k -> 0 boundary.
            if (y > 1.0) throw NoSolutionError("log marginal product never exceeds 1");
            return 1.0 / y - 1.0;
        case ProductionKind::Cara:
            if (y > 1.0) throw NoSolutionError("CARA marginal product never exceeds 1");
            return -std::log(y);
        case ProductionKind::CobbDouglas:
            return std::pow(y / spec.alpha, 1.0 / (spec.alpha - 1.0));
        case ProductionKind::CES:
            break;
    }

    // CES: f' is strictly decreasing with range (alpha^(1/tau), inf) for
    // tau in (0,1) and (0, alpha^(1/tau)) for tau < 0. Bracket the root by
    // geometric growth, then bisect.
    double lo = 1e-6, hi = 1e6;
    auto over = [&](double k) { return marginal_product(spec, k) > y; };
    // f' decreasing: want over(lo) true and over(hi) false.
    for (int i = 0; i < 60 && !over(lo); ++i) lo *= 0.25;
    for (int i = 0; i < 60 && over(hi); ++i) hi *= 4.0;
    if (!over(lo) || over(hi))
        throw NoSolutionError("target outside the range of the CES marginal product");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (over(mid) ? lo : hi) = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double average_product(const ProductionSpec& spec, double k) {
    require_positive_k(k);
    return intensive_output(spec, k) / k;
}

double curvature_gap(const ProductionSpec& spec, double k) {
    return average_product(spec, k) - marginal_product(spec, k);
}

double curvature_gap_slope(const ProductionSpec& spec, double k) {
    // d/dk [f/k] = (f'k - f)/k^2 = -h(k)/k, so h' = -h/k - f''.
    return -curvature_gap(spec, k) / k - second_derivative(spec, k);
}

std::optional<double> curvature_gap_critical_point(const ProductionSpec& spec) {
    if (spec.kind == ProductionKind::CobbDouglas)
        return std::nullopt;  // h = (1-alpha) k^(alpha-1), strictly decreasing

    // Scan a geometric grid for a sign change of h', then bisect.
    constexpr double kLo = 1e-6, kHi = 1e6;
    constexpr int kPointsPerDecade = 8;
    const int cells = static_cast<int>(kPointsPerDecade * std::log10(kHi / kLo));
    double prev_k = kLo;
    double prev_s = curvature_gap_slope(spec, prev_k);
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (int i = 1; i <= cells; ++i) {
        double k = kLo * std::pow(kHi / kLo, static_cast<double>(i) / cells);
        double s = curvature_gap_slope(spec, k);
        if (prev_s > 0.0 && s <= 0.0) {
            lo = prev_k;
            hi = k;
            found = true;
            break;
        }
        prev_k = k;
        prev_s = s;
    }
    if (!found) return std::nullopt;

    while (hi - lo > 1e-8) {
        double mid = 0.5 * (lo + hi);
        (curvature_gap_slope(spec, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ramsey
