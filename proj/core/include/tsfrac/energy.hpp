#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "tsfrac/grid_function.hpp"
#include "tsfrac/nonlinearity.hpp"

namespace tsfrac {

/// Kirchhoff-type fractional p-Laplacian boundary value problem with
/// u(a) = u(b) = 0.
struct BvpProblem {
    MeshPtr mesh;
    double alpha;
    double p;
    double beta;
    double kirchhoff_rho;
    /// Sampled at nodes; must be positive everywhere, or identically zero
    /// (diagnostic mode that drops the potential term).
    GridFunction lambda;
    Nonlinearity nonlinearity;
};

/// |y|^(p-2) y, and 0 at y = 0.
double phi_p(double y, double p);

/// Discrete energy
///   E(u) = ((β + ϱ S)^p - β^p) / (ϱ p^2) - Σ_t w_t λ(t) G(t, u(t)),
///   S(u) = Σ_t w_t |D u|^p(t),
/// over the interior degrees of freedom (nodes strictly between a and b).
/// D is the left RL-derivative matrix with the boundary columns removed and
/// w are left-rectangle Δ-weights. Immutable after assembly.
class EnergyModel {
public:
    using Vector = Eigen::VectorXd;

    const BvpProblem& problem() const noexcept { return problem_; }
    const Mesh& mesh() const noexcept { return *problem_.mesh; }
    Eigen::Index dofs() const noexcept { return derivative_.cols(); }

    /// n x (n-2) derivative matrix on interior columns.
    const Eigen::MatrixXd& derivative() const noexcept { return derivative_; }
    /// Left-rectangle Δ-weights at all n nodes (zero at b).
    const Vector& weights() const noexcept { return weights_; }

    double kirchhoff_integral(const Vector& u) const;
    /// Seminorm S(v)^(1/p).
    double seminorm(const Vector& v) const;
    double energy(const Vector& u) const;
    Vector gradient(const Vector& u) const;
    /// Exact Hessian; entries may be infinite where |Du| = 0 with p < 2 or
    /// where u = 0 for a weighted power with r < 2.
    Eigen::MatrixXd hessian(const Vector& u) const;

    /// Solves (Dᵀ W D) x = g, the Riesz map of the p = 2 seminorm inner
    /// product. Used as the descent metric.
    Vector riesz(const Vector& g) const;
    /// Norm of the i-th unit direction in the seminorm.
    double unit_seminorm(Eigen::Index i) const { return unit_norms_[static_cast<std::size_t>(i)]; }

    /// Full grid function with zero boundary values.
    GridFunction embed(const Vector& u) const;
    /// Interior values of a grid function on the model's mesh.
    Vector restrict(const GridFunction& u) const;

private:
    friend EnergyModel assemble(BvpProblem problem);
    explicit EnergyModel(BvpProblem problem) : problem_(std::move(problem)) {}

    BvpProblem problem_;
    Eigen::MatrixXd derivative_;
    Vector weights_;
    Vector lambda_weights_;  // w_t λ(t) on interior nodes
    Eigen::LLT<Eigen::MatrixXd> metric_;
    std::vector<double> unit_norms_;
};

/// Validates the problem (DomainError: α <= 1/p, α > 1, p <= 1, β <= 0,
/// ϱ <= 0, bad λ, catalog hypotheses) and assembles the model.
EnergyModel assemble(BvpProblem problem);

/// Max over coordinates of |central difference - gradient| relative to the
/// largest gradient entry; step epsilon * max(1, |u|_∞).
double fd_gradient_check(const EnergyModel& model, const EnergyModel::Vector& u, double epsilon = 1e-6);

/// max_i |<E'(u), e_i>| / ||e_i||, the weak-form residual over unit
/// coordinate directions measured in the seminorm.
double weak_residual(const EnergyModel& model, const EnergyModel::Vector& u);

} // namespace tsfrac
