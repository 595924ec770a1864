#include "tsfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

namespace {

// Number of uniform sub-cells of a segment of given length. The small
// relative shave keeps exact multiples (length/h_max = 4 computed as
// 4.0000000000000004) from gaining a spurious extra cell.
std::size_t subdivisions(double length, double h_max, std::size_t cap) {
    const double ratio = length / h_max;
    const double n = std::ceil(ratio * (1.0 - 4.0 * std::numeric_limits<double>::epsilon()));
    if (!(n < static_cast<double>(cap))) throw ResolutionError("mesh exceeds the node cap");
    return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

} // namespace

MeshPtr build_mesh(const TimeScale& scale, double h_max, std::size_t node_cap) {
    if (!(h_max > 0.0) || !std::isfinite(h_max))
        throw DomainError("h_max must be positive and finite, got " + format_double(h_max));

    auto mesh = std::shared_ptr<Mesh>(new Mesh(scale));
    mesh->h_max_ = h_max;

    const auto segs = scale.segments();
    std::size_t count = 0;
    std::vector<std::size_t> parts(segs.size(), 0);
    for (std::size_t k = 0; k < segs.size(); ++k) {
        parts[k] = segs[k].is_point() ? 0 : subdivisions(segs[k].hi - segs[k].lo, h_max, node_cap);
        count += parts[k] + 1;
        if (count > node_cap)
            throw ResolutionError("mesh would have more than " + std::to_string(node_cap) + " nodes");
    }

    auto& nodes = mesh->nodes_;
    auto& kinds = mesh->kinds_;
    nodes.reserve(count);
    kinds.reserve(count);
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const auto [lo, hi] = segs[k];
        const std::size_t n = parts[k];
        for (std::size_t j = 0; j < n; ++j) {
            nodes.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n));
            kinds.push_back(CellKind::dense);
        }
        nodes.push_back(hi);
        kinds.push_back(CellKind::scattered);
    }
    kinds.back() = CellKind::terminal;

    auto& mu = mesh->measures_;
    mu.resize(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) mu[i] = nodes[i + 1] - nodes[i];
    return mesh;
}

std::optional<std::size_t> Mesh::find(double t) const noexcept {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t Mesh::index_of(double t) const {
    if (auto i = find(t)) return *i;
    throw NotANodeError(t);
}

std::size_t Mesh::dense_cells() const noexcept {
    return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), CellKind::dense));
}

std::size_t Mesh::scattered_cells() const noexcept {
    return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), CellKind::scattered));
}

} // namespace tsfrac
