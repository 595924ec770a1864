#pragma once

#include <vector>

#include "tsfrac/grid_function.hpp"

namespace tsfrac {

/// Rule for dense cells. Scattered cells always use weight mu_i at the left
/// node, which is what the Δ-integral reduces to on a gap.
enum class DenseRule { left_rectangle, trapezoid };

struct QuadraturePolicy {
    DenseRule dense = DenseRule::trapezoid;

    static constexpr QuadraturePolicy left_rectangle() { return {DenseRule::left_rectangle}; }
    static constexpr QuadraturePolicy trapezoid() { return {DenseRule::trapezoid}; }
};

/// Per-node weights w with Σ_i w_i f_i = Δ-integral of f over
/// [node(first), node(last)). Entries outside the range are zero.
std::vector<double> quadrature_weights(const Mesh& mesh, QuadraturePolicy policy,
                                       std::size_t first, std::size_t last);
std::vector<double> quadrature_weights(const Mesh& mesh, QuadraturePolicy policy);

/// Δ-integral over [lo, hi); both ends must be mesh nodes (NotANodeError).
double delta_integral(const GridFunction& f, double lo, double hi, QuadraturePolicy policy = {});
/// Δ-integral over [a, b).
double delta_integral(const GridFunction& f, QuadraturePolicy policy = {});

/// Forward Hilger quotient per cell. The last node copies the previous
/// cell's value and the result is flagged `last_extrapolated`.
GridFunction delta_derivative(const GridFunction& f);

/// f∘σ: the successor's value on scattered cells, f itself on dense cells.
GridFunction sigma_shift(const GridFunction& f);

/// (Δ-integral of |f|^p over [a,b))^(1/p); BadExponentError for p < 1.
double lp_norm(const GridFunction& f, double p, QuadraturePolicy policy = {});
/// Same over [lo, hi).
double lp_norm(const GridFunction& f, double p, double lo, double hi, QuadraturePolicy policy = {});

double sup_norm(const GridFunction& f);

} // namespace tsfrac
