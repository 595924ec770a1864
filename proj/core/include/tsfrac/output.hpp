#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "tsfrac/grid_function.hpp"

namespace tsfrac {

/// Header `t,u,Dalpha_u`, one row per node, shortest round-trip decimal
/// formatting independent of the global locale.
void write_csv(std::ostream& out, const GridFunction& u, const GridFunction& dalpha_u);

/// Self-contained SVG plot of u over t. The polyline breaks across scattered
/// cells, isolated nodes get point markers, and the t axis has ticks at
/// segment boundaries.
void write_svg(std::ostream& out, const GridFunction& u, const std::string& title = {});

struct IndexEntry {
    std::string file;
    double energy;
    double grad_norm;
    std::string classification;
};

/// CSV `file,energy,grad_norm,classification` listing multistart outputs.
void write_index(std::ostream& out, const std::vector<IndexEntry>& entries);

/// Opens `path` for writing; DomainError when that fails.
std::ofstream open_output(const std::filesystem::path& path);

} // namespace tsfrac
