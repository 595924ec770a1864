#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsfrac/mesh.hpp"

namespace tsfrac {

/// Real values sampled at the nodes of a mesh.
class GridFunction {
public:
    /// Throws DomainError on length mismatch or non-finite values.
    GridFunction(MeshPtr mesh, std::vector<double> values, bool last_extrapolated = false);

    template <typename F>
    static GridFunction sample(MeshPtr mesh, F&& f) {
        std::vector<double> v;
        v.reserve(mesh->size());
        for (double t : mesh->nodes()) v.push_back(static_cast<double>(f(t)));
        return GridFunction(std::move(mesh), std::move(v));
    }
    static GridFunction constant(MeshPtr mesh, double c);

    const Mesh& mesh() const noexcept { return *mesh_; }
    const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// True when the value at the last node is a copy of the previous cell's
    /// (Δ-derivatives are undefined at a left-scattered maximum).
    bool last_extrapolated() const noexcept { return last_extrapolated_; }

    GridFunction abs() const;
    GridFunction operator-() const;
    friend GridFunction operator+(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator-(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator*(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator*(double c, const GridFunction& f);

private:
    MeshPtr mesh_;
    std::vector<double> values_;
    bool last_extrapolated_ = false;
};

} // namespace tsfrac
