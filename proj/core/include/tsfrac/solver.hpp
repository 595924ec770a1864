#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tsfrac/energy.hpp"

namespace tsfrac {

enum class SolverStatus { converged, max_iter, line_search_failure };
enum class Classification { trivial, mountain_pass, minimizer };

const char* to_string(SolverStatus s) noexcept;
const char* to_string(Classification c) noexcept;

struct SolverConfig {
    double tol_grad = 1e-6;          ///< Euclidean norm of the discrete gradient
    std::size_t max_iter = 20000;
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
    std::size_t max_backtracks = 60;
    std::size_t path_points = 21;
    std::size_t doubling_cap = 60;
    double triviality = 1e-3;        ///< sup-norm threshold for nontrivial solutions
    /// Finish with damped Newton iterations on the gradient once descent has
    /// reduced the gradient norm by `polish_ratio` (or stalled).
    bool polish = true;
    double polish_ratio = 1e-2;
};

struct SolverResult {
    GridFunction u;                  ///< with boundary zeros
    EnergyModel::Vector interior;
    double energy = 0.0;
    double grad_norm = 0.0;
    std::size_t iterations = 0;
    SolverStatus status = SolverStatus::max_iter;
    Classification classification = Classification::trivial;
};

/// Bump sin(π (t - a)/(b - a)) on the interior nodes, scaled to unit seminorm.
EnergyModel::Vector bump(const EnergyModel& model);

/// Gradient descent with Armijo backtracking in the seminorm metric, with
/// Barzilai-Borwein initial steps. Requires a weighted-power (bounded below)
/// nonlinearity; DomainError otherwise.
SolverResult minimize(const EnergyModel& model, const EnergyModel::Vector& u0, const SolverConfig& cfg = {});

/// Mountain-pass search along the ray through `direction` (default: bump).
/// Finds an endpoint e with E(e) <= 0 by doubling, then deforms a
/// piecewise-linear path from 0 to e by moving its highest point downhill
/// and re-spacing the path by seminorm arc length. EndpointNotFound when the
/// nonlinearity is not superlinear or doubling exceeds the cap.
SolverResult mountain_pass(const EnergyModel& model, const SolverConfig& cfg = {});
SolverResult mountain_pass(const EnergyModel& model, const EnergyModel::Vector& direction,
                           const SolverConfig& cfg = {});

struct SymmetricPair {
    SolverResult solution;           ///< sign-normalized: largest-magnitude entry positive
    SolverResult mirror;             ///< -solution, evaluated independently
    double energy_gap = 0.0;         ///< |E(u) - E(-u)|
    bool mirror_converged = false;   ///< mirror gradient norm <= tol_grad
};

struct MultistartResult {
    std::vector<SolverResult> runs;          ///< one per successful start, in start order
    std::vector<SymmetricPair> pairs;        ///< distinct nontrivial critical points
    std::vector<std::string> failures;       ///< messages of starts that threw
};

/// k random starts (uniform in [-1, 1] per node, one 3-point smoothing
/// pass, unit seminorm) through minimize (weighted power) or mountain_pass
/// (power). Starts are independent and run concurrently. Solutions are
/// deduplicated by sup-distance <= 1e-3 after sign normalization.
MultistartResult multistart(const EnergyModel& model, std::size_t k, std::uint64_t seed,
                            const SolverConfig& cfg = {});

/// Random start used by multistart for start index `index`.
EnergyModel::Vector random_start(const EnergyModel& model, std::uint64_t seed, std::size_t index);

} // namespace tsfrac
