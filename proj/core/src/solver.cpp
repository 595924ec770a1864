#include "tsfrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <limits>
#include <random>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"

namespace tsfrac {

using Vector = EnergyModel::Vector;

const char* to_string(SolverStatus s) noexcept {
    switch (s) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::max_iter: return "max-iter";
    case SolverStatus::line_search_failure: return "line-search-failure";
    }
    return "unknown";
}

const char* to_string(Classification c) noexcept {
    switch (c) {
    case Classification::trivial: return "trivial";
    case Classification::mountain_pass: return "mountain-pass";
    case Classification::minimizer: return "minimizer";
    }
    return "unknown";
}

namespace {

SolverResult make_result(const EnergyModel& model, const Vector& u, std::size_t iterations,
                         SolverStatus status, const SolverConfig& cfg) {
    SolverResult r{model.embed(u), u};
    r.energy = model.energy(u);
    r.grad_norm = model.gradient(u).norm();
    r.iterations = iterations;
    r.status = status;
    if (u.size() == 0 || u.cwiseAbs().maxCoeff() <= cfg.triviality)
        r.classification = Classification::trivial;
    else
        r.classification = r.energy > 0.0 ? Classification::mountain_pass : Classification::minimizer;
    return r;
}

// Σ w (D s)^2, i.e. sᵀ M s for the descent metric.
double metric_norm2(const EnergyModel& model, const Vector& s) {
    const Vector ds = model.derivative() * s;
    return (model.weights().array() * ds.array().square()).sum();
}

// Damped Newton iteration on ∇E = 0 with merit ||∇E||. Returns true when
// the gradient norm reaches tol_grad; `u` holds the last accepted iterate.
bool newton_polish(const EnergyModel& model, Vector& u, const SolverConfig& cfg, std::size_t& iterations) {
    Vector g = model.gradient(u);
    double gn = g.norm();
    for (int k = 0; k < 50 && gn > cfg.tol_grad; ++k) {
        const Eigen::MatrixXd h = model.hessian(u);
        if (!h.allFinite()) return false;
        const Vector delta = h.fullPivLu().solve(-g);
        if (!delta.allFinite()) return false;
        double tau = 1.0;
        bool accepted = false;
        for (int b = 0; b < 40; ++b) {
            const Vector trial = u + tau * delta;
            const Vector gt = model.gradient(trial);
            if (gt.norm() < gn) {
                u = trial;
                g = gt;
                gn = gt.norm();
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        ++iterations;
        if (!accepted) return false;
    }
    return gn <= cfg.tol_grad;
}

// Armijo backtracking along d from x. On success writes the new point and
// energy and returns the step used; returns 0 on failure.
double armijo(const EnergyModel& model, const Vector& x, double ex, const Vector& g, const Vector& d,
              double tau, const SolverConfig& cfg, Vector& out, double& e_out) {
    const double slope = g.dot(d);
    for (std::size_t b = 0; b <= cfg.max_backtracks; ++b) {
        out = x + tau * d;
        e_out = model.energy(out);
        if (std::isfinite(e_out) && e_out <= ex + cfg.armijo_c1 * tau * slope) return tau;
        tau *= cfg.backtrack;
    }
    return 0.0;
}

} // namespace

Vector bump(const EnergyModel& model) {
    const Mesh& mesh = model.mesh();
    Vector v(model.dofs());
    const double a = mesh.a();
    const double len = mesh.b() - a;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = std::sin(std::numbers::pi * (mesh.node(std::size_t(i + 1)) - a) / len);
    return v / model.seminorm(v);
}

SolverResult minimize(const EnergyModel& model, const Vector& u0, const SolverConfig& cfg) {
    if (is_superlinear(model.problem().nonlinearity))
        throw DomainError("minimize needs a bounded-below (weighted power) nonlinearity");
    if (u0.size() != model.dofs()) throw DomainError("initial guess has the wrong size");

    Vector u = u0;
    double e = model.energy(u);
    Vector g = model.gradient(u);
    double gn = g.norm();
    double polish_at = cfg.polish_ratio * gn;
    double tau = 1.0;
    std::size_t it = 0;

    const auto try_polish = [&]() {
        Vector trial = u;
        std::size_t extra = 0;
        const bool ok = newton_polish(model, trial, cfg, extra);
        if (ok && model.energy(trial) <= e + 1e-12 * std::max(1.0, std::fabs(e))) {
            u = trial;
            it += extra;
            return true;
        }
        return false;
    };

    while (true) {
        if (gn <= cfg.tol_grad) return make_result(model, u, it, SolverStatus::converged, cfg);
        if (it >= cfg.max_iter) return make_result(model, u, it, SolverStatus::max_iter, cfg);
        if (cfg.polish && gn <= polish_at) {
            if (try_polish()) return make_result(model, u, it, SolverStatus::converged, cfg);
            polish_at *= cfg.polish_ratio;
        }

        const Vector d = -model.riesz(g);
        Vector trial;
        double et = 0.0;
        const double step = armijo(model, u, e, g, d, tau, cfg, trial, et);
        ++it;
        if (step == 0.0) {
            if (cfg.polish && try_polish()) return make_result(model, u, it, SolverStatus::converged, cfg);
            return make_result(model, u, it, SolverStatus::line_search_failure, cfg);
        }

        const Vector gt = model.gradient(trial);
        const Vector s = trial - u;
        const double sy = s.dot(gt - g);
        tau = sy > 0.0 ? std::clamp(metric_norm2(model, s) / sy, 1e-10, 1e10) : 1.0;
        u = trial;
        e = et;
        g = gt;
        gn = g.norm();
    }
}

SolverResult mountain_pass(const EnergyModel& model, const SolverConfig& cfg) {
    return mountain_pass(model, bump(model), cfg);
}

namespace {

// Re-spaces interior path points to equal seminorm arc length once the
// spacing has become uneven (longest segment over twice the shortest).
void respace(const EnergyModel& model, std::vector<Vector>& path) {
    const std::size_t m = path.size();
    std::vector<double> cum(m, 0.0);
    double longest = 0.0, shortest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < m; ++k) {
        const double len = model.seminorm(path[k] - path[k - 1]);
        cum[k] = cum[k - 1] + len;
        longest = std::max(longest, len);
        shortest = std::min(shortest, len);
    }
    const double total = cum.back();
    if (!(total > 0.0) || longest <= 2.0 * shortest) return;
    std::vector<Vector> out(m);
    out.front() = path.front();
    out.back() = path.back();
    std::size_t seg = 0;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(m - 1);
        while (seg + 2 < m && cum[seg + 1] < target) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double theta = len > 0.0 ? std::clamp((target - cum[seg]) / len, 0.0, 1.0) : 0.0;
        out[j] = (1.0 - theta) * path[seg] + theta * path[seg + 1];
    }
    path = std::move(out);
}

} // namespace

SolverResult mountain_pass(const EnergyModel& model, const Vector& direction, const SolverConfig& cfg) {
    if (!is_superlinear(model.problem().nonlinearity))
        throw EndpointNotFound("mountain pass needs a superlinear (power) nonlinearity");
    if (direction.size() != model.dofs()) throw DomainError("direction has the wrong size");
    const double norm = model.seminorm(direction);
    if (!(norm > 0.0)) throw DomainError("mountain-pass direction must be nonzero");
    const Vector v = direction / norm;

    // Endpoint with E(e) <= 0 along the ray.
    double xi = 1.0;
    std::size_t doublings = 0;
    while (model.energy(xi * v) > 0.0) {
        if (++doublings > cfg.doubling_cap)
            throw EndpointNotFound("energy stayed positive along the ray after " +
                                   std::to_string(cfg.doubling_cap) + " doublings");
        xi *= 2.0;
    }
    const Vector endpoint = xi * v;

    const std::size_t m = std::max<std::size_t>(cfg.path_points, 3);
    std::vector<Vector> path(m);
    for (std::size_t k = 0; k < m; ++k)
        path[k] = (static_cast<double>(k) / static_cast<double>(m - 1)) * endpoint;

    double polish_at = -1.0;
    double tau = 1.0;
    double best_top = std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;
    std::size_t polish_attempts = 0;
    constexpr std::size_t stall_window = 10;
    constexpr std::size_t max_polish_attempts = 5;
    for (std::size_t it = 0;; ++it) {
        std::size_t top = 1;
        double top_energy = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k + 1 < m; ++k) {
            const double ek = model.energy(path[k]);
            if (ek > top_energy) {
                top_energy = ek;
                top = k;
            }
        }
        Vector& x = path[top];
        const Vector g = model.gradient(x);
        const double gn = g.norm();
        if (polish_at < 0.0) polish_at = cfg.polish_ratio * gn;
        if (gn <= cfg.tol_grad) return make_result(model, x, it, SolverStatus::converged, cfg);
        if (it >= cfg.max_iter) return make_result(model, x, it, SolverStatus::max_iter, cfg);

        // The coarse path often stops improving before the gradient is small:
        // re-spacing keeps undoing the move of the highest point.
        if (top_energy < best_top - 1e-10 * std::fabs(best_top)) {
            best_top = top_energy;
            stalled = 0;
        } else {
            ++stalled;
        }
        const bool stall = stalled >= stall_window;
        if (cfg.polish && (gn <= polish_at || stall) && polish_attempts < max_polish_attempts) {
            ++polish_attempts;
            stalled = 0;
            Vector trial = x;
            std::size_t extra = 0;
            if (newton_polish(model, trial, cfg, extra) && model.energy(trial) > 0.0 &&
                trial.cwiseAbs().maxCoeff() > cfg.triviality)
                return make_result(model, trial, it + extra, SolverStatus::converged, cfg);
            if (gn <= polish_at) polish_at *= cfg.polish_ratio;
        }

        const Vector d = -model.riesz(g);
        // the energy is unbounded below, so a step may not exceed one path spacing
        double spacing = 0.0;
        for (std::size_t k = 1; k < m; ++k) spacing += model.seminorm(path[k] - path[k - 1]);
        spacing /= static_cast<double>(m - 1);
        const double cap = spacing / model.seminorm(d);
        Vector moved;
        double em = 0.0;
        const double step = armijo(model, x, top_energy, g, d, std::min(2.0 * tau, cap), cfg, moved, em);
        if (step == 0.0) return make_result(model, x, it, SolverStatus::line_search_failure, cfg);
        tau = step;
        x = moved;
        respace(model, path);
    }
}

Vector random_start(const EnergyModel& model, std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Eigen::Index m = model.dofs();
    Vector x(m);
    for (Eigen::Index i = 0; i < m; ++i) x[i] = dist(rng);
    Vector y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double left = i > 0 ? x[i - 1] : 0.0;
        const double right = i + 1 < m ? x[i + 1] : 0.0;
        y[i] = (left + x[i] + right) / 3.0;
    }
    return y / model.seminorm(y);
}

MultistartResult multistart(const EnergyModel& model, std::size_t k, std::uint64_t seed, const SolverConfig& cfg) {
    const bool superlinear = is_superlinear(model.problem().nonlinearity);
    std::vector<std::future<SolverResult>> jobs;
    jobs.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        jobs.push_back(std::async(std::launch::async, [&model, &cfg, seed, i, superlinear] {
            const Vector start = random_start(model, seed, i);
            return superlinear ? mountain_pass(model, start, cfg) : minimize(model, start, cfg);
        }));
    }

    MultistartResult out;
    for (auto& job : jobs) {
        try {
            out.runs.push_back(job.get());
        } catch (const Error& e) {
            out.failures.emplace_back(e.what());
        }
    }

    for (const auto& run : out.runs) {
        if (run.status != SolverStatus::converged || run.classification == Classification::trivial) continue;
        Eigen::Index lead = 0;
        run.interior.cwiseAbs().maxCoeff(&lead);
        const Vector u = run.interior[lead] < 0.0 ? Vector(-run.interior) : run.interior;

        const bool duplicate = std::any_of(out.pairs.begin(), out.pairs.end(), [&](const SymmetricPair& p) {
            return (p.solution.interior - u).cwiseAbs().maxCoeff() <= 1e-3;
        });
        if (duplicate) continue;

        SymmetricPair pair{make_result(model, u, run.iterations, run.status, cfg),
                           make_result(model, -u, 0, SolverStatus::max_iter, cfg)};
        pair.mirror_converged = pair.mirror.grad_norm <= cfg.tol_grad;
        if (pair.mirror_converged) pair.mirror.status = SolverStatus::converged;
        pair.energy_gap = std::fabs(pair.solution.energy - pair.mirror.energy);
        out.pairs.push_back(std::move(pair));
    }
    return out;
}

} // namespace tsfrac
