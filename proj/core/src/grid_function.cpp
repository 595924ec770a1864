#include "tsfrac/grid_function.hpp"

#include <cmath>

#include "tsfrac/errors.hpp"

namespace tsfrac {

GridFunction::GridFunction(MeshPtr mesh, std::vector<double> values, bool last_extrapolated)
    : mesh_(std::move(mesh)), values_(std::move(values)), last_extrapolated_(last_extrapolated) {
    if (!mesh_) throw DomainError("grid function needs a mesh");
    if (values_.size() != mesh_->size())
        throw DomainError("grid function has " + std::to_string(values_.size()) +
                          " values for a mesh of " + std::to_string(mesh_->size()) + " nodes");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::constant(MeshPtr mesh, double c) {
    const std::size_t n = mesh->size();
    return GridFunction(std::move(mesh), std::vector<double>(n, c));
}

namespace {

template <typename Op>
GridFunction zip(const GridFunction& f, const GridFunction& g, Op op) {
    if (f.mesh_ptr() != g.mesh_ptr()) throw DomainError("grid functions live on different meshes");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(f[i], g[i]);
    return GridFunction(f.mesh_ptr(), std::move(v),
                        f.last_extrapolated() || g.last_extrapolated());
}

} // namespace

GridFunction GridFunction::abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::fabs(x);
    return GridFunction(mesh_, std::move(v), last_extrapolated_);
}

GridFunction GridFunction::operator-() const { return -1.0 * *this; }

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, [](double x, double y) { return x - y; });
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
    return zip(f, g, [](double x, double y) { return x * y; });
}

GridFunction operator*(double c, const GridFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x *= c;
    return GridFunction(f.mesh_ptr(), std::move(v), f.last_extrapolated());
}

} // namespace tsfrac
