#pragma once

// Intensive-form production technologies: CES, Cobb-Douglas, log, CARA.
// All derivatives are hand-derived closed forms; the only numeric search in
// this module is the CES marginal-product inversion and the curvature-gap
// critical point.

#include <optional>
#include <string>

namespace ramsey {

enum class ProductionKind { CES, CobbDouglas, Log, Cara };

struct ProductionSpec {
    ProductionKind kind = ProductionKind::CobbDouglas;
    double alpha = 0.0;  // share parameter (CES, CobbDouglas)
    double tau = 0.0;    // substitution parameter (CES), tau < 1 and tau != 0

    static ProductionSpec ces(double alpha, double tau);
    static ProductionSpec cobb_douglas(double alpha);
    static ProductionSpec log();
    static ProductionSpec cara();
};

const char* to_string(ProductionKind kind);
ProductionKind production_kind_from_string(const std::string& name);

// f(k) for k >= 0. f(0) is the continuous limit: 0 for Cobb-Douglas/log/CARA,
// (1-alpha)^(1/tau) for CES with tau > 0, 0 for CES with tau < 0.
double intensive_output(const ProductionSpec& spec, double k);

// f'(k), k > 0.
double marginal_product(const ProductionSpec& spec, double k);

// f''(k), k > 0. Strictly negative for every family.
double second_derivative(const ProductionSpec& spec, double k);

// Solve f'(k) = y for k > 0. Closed form except CES (bracketed bisection,
// relative tolerance 1e-12). Throws NoSolutionError when y is outside the
// range of f'.
double inverse_marginal(const ProductionSpec& spec, double y);

// f(k)/k, k > 0. Strictly decreasing.
double average_product(const ProductionSpec& spec, double k);

// h(k) = f(k)/k - f'(k), k > 0. Strictly positive (strict concavity).
double curvature_gap(const ProductionSpec& spec, double k);

// h'(k) = -h(k)/k - f''(k).
double curvature_gap_slope(const ProductionSpec& spec, double k);

// The unique interior maximiser of h, when one exists: bisection on h' over a
// sign change located by geometric scan of [1e-6, 1e6], absolute tolerance
// 1e-8. Cobb-Douglas has h strictly decreasing (no interior critical point)
// and returns nullopt, as does any scan that finds no sign change.
std::optional<double> curvature_gap_critical_point(const ProductionSpec& spec);

}  // namespace ramsey
