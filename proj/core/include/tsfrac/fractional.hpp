#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "tsfrac/grid_function.hpp"

namespace tsfrac {

enum class Side { left, right };

/// How the weakly singular kernel (t - σ(s))^(α-1) / Γ(α) is integrated
/// over a cell [s, σ(s)).
///
/// cell_averaged: the kernel is integrated exactly over the cell, giving the
///   weight [(t - s)^α - (t - σ(s))^α] / Γ(α + 1). Exact for piecewise-constant
///   data and finite for every cell.
/// left_endpoint: the literal Δ-integral weight μ(s) (t - σ(s))^(α-1) / Γ(α),
///   with σ(s) the mesh successor. Diverges (SingularKernelError) on the cell
///   whose successor is the evaluation node when α < 1.
enum class KernelPolicy { cell_averaged, left_endpoint };

/// Γ(x) for x > 0; DomainError otherwise.
double gamma_fn(double x);

/// Fractional integral of order α > 0.
///
/// Left: value at node t is Σ over cells [s, σ(s)) with σ(s) <= t of the
/// kernel weight times f(s); zero at a.
/// Right: the measure-weighted adjoint of the left operator,
/// (I_right φ)(s) = Σ_{t > s} μ_t K(t, s) φ(t) / μ_s, so that
/// Σ μ φ (I_left ψ) = Σ μ ψ (I_right φ) holds as a finite-sum identity.
/// Zero at the last node.
GridFunction frac_integral(const GridFunction& f, double alpha, Side side = Side::left,
                           KernelPolicy policy = KernelPolicy::cell_averaged);

/// Left fractional integral evaluated at a single node.
double frac_integral_at(const GridFunction& f, double alpha, std::size_t node,
                        KernelPolicy policy = KernelPolicy::cell_averaged);

/// Riemann-Liouville derivative, 0 < α <= 1.
///
/// Left: Δ-derivative of the cell-averaged (1-α)-integral. Inside this
/// composition each cell carries the value at its right node, so row i
/// depends on u(node_1) .. u(node_{i+1}); as α -> 1 this tends to the
/// forward Hilger quotient. α = 1 returns delta_derivative(f).
/// Right: negated Δ-derivative of the right (1-α)-integral.
/// The last node is extrapolated (flagged).
GridFunction rl_derivative(const GridFunction& f, double alpha, Side side = Side::left);

/// Caputo derivative, 0 < α <= 1: the (1-α)-integral of f^Δ (negated on
/// the right side).
GridFunction caputo_derivative(const GridFunction& f, double alpha, Side side = Side::left,
                               KernelPolicy policy = KernelPolicy::cell_averaged);

/// Literal right kernel Σ_{cells τ, τ > σ(t)} μ_τ (τ - σ(t))^(α-1) φ(τ) / Γ(α),
/// with σ the time-scale jump. Diagnostic for comparing against the adjoint
/// right operator on dense meshes.
GridFunction literal_right_integral(const GridFunction& phi, double alpha);

enum class OperatorKind { integral_left, integral_right_adjoint, rl_derivative_left };

/// Dense matrix realization of a fractional operator on a mesh.
class FracOperator {
public:
    static constexpr std::size_t max_nodes = 16384;

    FracOperator(MeshPtr mesh, Eigen::MatrixXd matrix, double alpha, OperatorKind kind,
                 KernelPolicy policy);

    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    double alpha() const noexcept { return alpha_; }
    OperatorKind kind() const noexcept { return kind_; }
    Side side() const noexcept {
        return kind_ == OperatorKind::integral_right_adjoint ? Side::right : Side::left;
    }
    KernelPolicy policy() const noexcept { return policy_; }
    const Mesh& mesh() const noexcept { return *mesh_; }
    const MeshPtr& mesh_ptr() const noexcept { return mesh_; }

    GridFunction apply(const GridFunction& f) const;

private:
    MeshPtr mesh_;
    Eigen::MatrixXd matrix_;
    double alpha_;
    OperatorKind kind_;
    KernelPolicy policy_;
};

/// Assembles the matrix of an operator; ResolutionError above
/// FracOperator::max_nodes nodes. The rl_derivative_left kind ignores
/// `policy` (always cell-averaged).
FracOperator operator_matrix(MeshPtr mesh, double alpha, OperatorKind kind,
                             KernelPolicy policy = KernelPolicy::cell_averaged);

} // namespace tsfrac
