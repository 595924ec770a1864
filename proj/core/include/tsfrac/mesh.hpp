#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tsfrac/time_scale.hpp"

namespace tsfrac {

/// Kind of the cell [node_i, node_{i+1}). `terminal` tags the last node,
/// which owns no cell (measure 0).
enum class CellKind : std::uint8_t { dense, scattered, terminal };

/// Discretization of a TimeScale. Nodes include every segment endpoint;
/// non-degenerate segments are subdivided uniformly with spacing <= h_max.
/// A scattered cell spans a gap of T and its measure is the true graininess.
class Mesh {
public:
    static constexpr std::size_t default_node_cap = 10'000'000;

    const TimeScale& scale() const noexcept { return scale_; }
    double h_max() const noexcept { return h_max_; }

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const { return nodes_[i]; }
    /// Cell measure node_{i+1} - node_i; zero for the last node.
    double measure(std::size_t i) const { return measures_[i]; }
    std::span<const double> measures() const noexcept { return measures_; }
    CellKind kind(std::size_t i) const { return kinds_[i]; }

    double a() const noexcept { return nodes_.front(); }
    double b() const noexcept { return nodes_.back(); }

    std::optional<std::size_t> find(double t) const noexcept;
    /// Index of node t; throws NotANodeError.
    std::size_t index_of(double t) const;

    std::size_t dense_cells() const noexcept;
    std::size_t scattered_cells() const noexcept;
    bool purely_scattered() const noexcept { return dense_cells() == 0; }

private:
    friend std::shared_ptr<const Mesh> build_mesh(const TimeScale&, double, std::size_t);
    explicit Mesh(TimeScale scale) : scale_(std::move(scale)) {}

    TimeScale scale_;
    double h_max_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> measures_;
    std::vector<CellKind> kinds_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Throws DomainError for h_max <= 0 and ResolutionError when the node count
/// would exceed `node_cap`.
MeshPtr build_mesh(const TimeScale& scale, double h_max,
                   std::size_t node_cap = Mesh::default_node_cap);

} // namespace tsfrac
