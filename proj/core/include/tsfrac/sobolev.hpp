#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsfrac/grid_function.hpp"

namespace tsfrac {

/// Order α in (0, 1] and exponent p in (1, ∞) of the fractional Sobolev
/// space; q is the conjugate exponent.
struct SobolevParams {
    double alpha;
    double p;

    /// Validating constructor; DomainError outside the ranges above.
    static SobolevParams make(double alpha, double p);

    double q() const noexcept { return p / (p - 1.0); }
    /// α > 1/p, needed for the sup-norm embedding and the Hölder modulus.
    bool embeds_in_continuous() const noexcept { return alpha * p > 1.0; }
};

struct SobolevNorm {
    double full;      ///< (||u||_p^p + ||D^α u||_p^p)^(1/p)
    double seminorm;  ///< ||D^α u||_p, the norm the variational solver uses
};

/// Norms are Δ-integrals with the left-rectangle rule, so the extrapolated
/// derivative value at b never enters.
SobolevNorm sobolev_norm(const GridFunction& u, const SobolevParams& params);

/// (|I^(1-α) u at the first node after a|^p + seminorm^p)^(1/p). For α = 1
/// the first term is taken as zero.
double equivalent_norm(const GridFunction& u, const SobolevParams& params);

/// Embedding constants. The `*_shifted` variants replace b by b - a; they
/// coincide with the plain ones when a = 0.
struct EmbeddingConstants {
    double c_lp;                    ///< b^α / Γ(α+1)
    std::optional<double> c_sup;    ///< b^(α-1/p) / (Γ(α) ((α-1)q+1)^(1/q)), α > 1/p only
    double c_lp_shifted;
    std::optional<double> c_sup_shifted;
    bool a_is_zero;                 ///< flags the a = 0 case (constants stated for 0 < a)
};

/// DomainError unless 0 <= a < b.
EmbeddingConstants embedding_bounds(const SobolevParams& params, double a, double b);

/// The sup-norm constant alone; DomainError when α <= 1/p.
double sup_embedding_constant(const SobolevParams& params, double b);

/// One checked inequality lhs <= rhs. `pass` is lhs <= rhs (1 + 1e-9).
struct InequalityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double slack = 0.0;   ///< rhs - lhs
    bool pass = true;
};

inline constexpr double embedding_tolerance = 1e-9;

InequalityCheck make_check(std::string name, double lhs, double rhs, double constant);

struct EmbeddingReport {
    std::vector<InequalityCheck> checks;
    bool pass() const noexcept {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Checks ||u||_p <= c_lp ||D^α u||_p and ||u||_∞ <= c_sup ||D^α u||_p.
/// Requires u(a) = 0 and α > 1/p (DomainError otherwise).
EmbeddingReport verify_embeddings(const GridFunction& u, const SobolevParams& params);

/// C = 2 seminorm / (Γ(α) (1 + (α-1) q)^(1/q)); then
/// |u(t1) - u(t2)| <= C |t2 - t1|^(α - 1/p) on the zero-trace space.
double holder_modulus(const SobolevParams& params, double seminorm);

/// Worst node pair of the Hölder-continuity bound: lhs is the largest
/// |u(t1) - u(t2)| / |t2 - t1|^(α-1/p), rhs is holder_modulus.
InequalityCheck verify_holder_modulus(const GridFunction& u, const SobolevParams& params);

} // namespace tsfrac
