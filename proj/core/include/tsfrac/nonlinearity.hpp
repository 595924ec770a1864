#pragma once

#include <cstddef>
#include <variant>

#include "tsfrac/grid_function.hpp"

namespace tsfrac {

/// G(t, x) = c |x|^μ / μ with μ = ar_exponent > p^2 (superlinear,
/// Ambrosetti-Rabinowitz type).
struct PowerNonlinearity {
    double c = 1.0;
    double ar_exponent = 6.0;
};

/// G(t, x) = d(t) |x|^r with 1 < r < p^2 and d >= 0, d not identically 0
/// (sublinear / coercive regime).
struct WeightedPowerNonlinearity {
    GridFunction d;
    double r;
};

using Nonlinearity = std::variant<PowerNonlinearity, WeightedPowerNonlinearity>;

/// G(node, x).
double potential(const Nonlinearity& g, std::size_t node, double x);
/// ∇G(node, x) = ∂G/∂x.
double potential_gradient(const Nonlinearity& g, std::size_t node, double x);
/// ∂²G/∂x². Infinite at x = 0 for weighted powers with r < 2.
double potential_curvature(const Nonlinearity& g, std::size_t node, double x);

/// Throws DomainError when the catalog hypotheses fail for exponent p.
void validate(const Nonlinearity& g, double p);

bool is_superlinear(const Nonlinearity& g) noexcept;

} // namespace tsfrac
