#include "tsfrac/delta_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

std::vector<double> quadrature_weights(const Mesh& mesh, QuadraturePolicy policy, std::size_t first,
                                       std::size_t last) {
    std::vector<double> w(mesh.size(), 0.0);
    for (std::size_t i = first; i < last; ++i) {
        const double mu = mesh.measure(i);
        if (mesh.kind(i) == CellKind::dense && policy.dense == DenseRule::trapezoid) {
            w[i] += 0.5 * mu;
            w[i + 1] += 0.5 * mu;
        } else {
            w[i] += mu;
        }
    }
    return w;
}

std::vector<double> quadrature_weights(const Mesh& mesh, QuadraturePolicy policy) {
    return quadrature_weights(mesh, policy, 0, mesh.size() - 1);
}

namespace {

double weighted_sum(const GridFunction& f, std::size_t first, std::size_t last, QuadraturePolicy policy,
                    auto&& transform) {
    const Mesh& mesh = f.mesh();
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        const double mu = mesh.measure(i);
        if (mesh.kind(i) == CellKind::dense && policy.dense == DenseRule::trapezoid)
            sum += mu * 0.5 * (transform(f[i]) + transform(f[i + 1]));
        else
            sum += mu * transform(f[i]);
    }
    return sum;
}

std::pair<std::size_t, std::size_t> node_range(const Mesh& mesh, double lo, double hi) {
    const std::size_t i = mesh.index_of(lo);
    const std::size_t j = mesh.index_of(hi);
    if (i > j) throw DomainError("integration range has lo > hi");
    return {i, j};
}

} // namespace

double delta_integral(const GridFunction& f, double lo, double hi, QuadraturePolicy policy) {
    const auto [i, j] = node_range(f.mesh(), lo, hi);
    return weighted_sum(f, i, j, policy, [](double x) { return x; });
}

double delta_integral(const GridFunction& f, QuadraturePolicy policy) {
    return weighted_sum(f, 0, f.size() - 1, policy, [](double x) { return x; });
}

GridFunction delta_derivative(const GridFunction& f) {
    const Mesh& mesh = f.mesh();
    const std::size_t n = mesh.size();
    if (n < 2) throw DomainError("Δ-derivative needs at least two nodes");
    std::vector<double> d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i]) / mesh.measure(i);
    d[n - 1] = d[n - 2];
    return GridFunction(f.mesh_ptr(), std::move(d), true);
}

GridFunction sigma_shift(const GridFunction& f) {
    const Mesh& mesh = f.mesh();
    std::vector<double> v(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
        if (mesh.kind(i) == CellKind::scattered) v[i] = f[i + 1];
    return GridFunction(f.mesh_ptr(), std::move(v));
}

namespace {

double lp_norm_range(const GridFunction& f, double p, std::size_t first, std::size_t last,
                     QuadraturePolicy policy) {
    if (!(p >= 1.0)) throw BadExponentError("L^p norm needs p >= 1, got " + format_double(p));
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = first; i <= last; ++i) m = std::max(m, std::fabs(f[i]));
        return m;
    }
    const double s = weighted_sum(f, first, last, policy, [p](double x) { return std::pow(std::fabs(x), p); });
    return std::pow(s, 1.0 / p);
}

} // namespace

double lp_norm(const GridFunction& f, double p, QuadraturePolicy policy) {
    return lp_norm_range(f, p, 0, f.size() - 1, policy);
}

double lp_norm(const GridFunction& f, double p, double lo, double hi, QuadraturePolicy policy) {
    const auto [i, j] = node_range(f.mesh(), lo, hi);
    return lp_norm_range(f, p, i, j, policy);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace tsfrac
