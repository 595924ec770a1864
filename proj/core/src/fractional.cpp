#include "tsfrac/fractional.hpp"

#include <cmath>
#include <vector>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("gamma_fn needs a finite positive argument, got " + format_double(x));
    return std::tgamma(x);
}

namespace {

void require_integral_order(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("fractional integral order must be positive, got " + format_double(alpha));
}

void require_derivative_order(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("fractional derivative order must lie in (0, 1], got " + format_double(alpha));
}

// Weights K(i, j), i < j, of cells [node_i, node_{i+1}) at evaluation node j.
class KernelRow {
public:
    KernelRow(const Mesh& mesh, double alpha, KernelPolicy policy)
        : mesh_(mesh), alpha_(alpha), policy_(policy), weights_(mesh.size(), 0.0) {
        scale_ = policy == KernelPolicy::cell_averaged ? 1.0 / gamma_fn(alpha + 1.0)
                                                       : 1.0 / gamma_fn(alpha);
    }

    std::span<const double> operator()(std::size_t j) {
        const double t = mesh_.node(j);
        if (policy_ == KernelPolicy::cell_averaged) {
            double prev = j > 0 ? std::pow(t - mesh_.node(0), alpha_) : 0.0;
            for (std::size_t i = 0; i < j; ++i) {
                const double next = i + 1 == j ? 0.0 : std::pow(t - mesh_.node(i + 1), alpha_);
                weights_[i] = (prev - next) * scale_;
                prev = next;
            }
        } else {
            for (std::size_t i = 0; i < j; ++i) {
                const double base = t - mesh_.node(i + 1);
                if (base == 0.0 && alpha_ < 1.0) throw SingularKernelError(i, j, alpha_);
                weights_[i] = mesh_.measure(i) * std::pow(base, alpha_ - 1.0) * scale_;
            }
        }
        return {weights_.data(), j};
    }

private:
    const Mesh& mesh_;
    double alpha_;
    KernelPolicy policy_;
    double scale_ = 1.0;
    std::vector<double> weights_;
};

enum class Sampling { left_node, right_node };

std::vector<double> left_integral(const GridFunction& f, double alpha, KernelPolicy policy,
                                  Sampling sampling) {
    const Mesh& mesh = f.mesh();
    const std::size_t offset = sampling == Sampling::right_node ? 1 : 0;
    KernelRow row(mesh, alpha, policy);
    std::vector<double> out(mesh.size(), 0.0);
    for (std::size_t j = 1; j < mesh.size(); ++j) {
        const auto k = row(j);
        double sum = 0.0;
        for (std::size_t i = 0; i < j; ++i) sum += k[i] * f[i + offset];
        out[j] = sum;
    }
    return out;
}

std::vector<double> right_adjoint_integral(const GridFunction& f, double alpha, KernelPolicy policy) {
    const Mesh& mesh = f.mesh();
    const std::size_t n = mesh.size();
    KernelRow row(mesh, alpha, policy);
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double wf = mesh.measure(j) * f[j];
        if (wf == 0.0) continue;
        const auto k = row(j);
        for (std::size_t i = 0; i < j; ++i) out[i] += k[i] * wf;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] /= mesh.measure(i);
    return out;
}

std::vector<double> forward_quotient(const Mesh& mesh, const std::vector<double>& v) {
    const std::size_t n = mesh.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i]) / mesh.measure(i);
    d[n - 1] = d[n - 2];
    return d;
}

} // namespace

GridFunction frac_integral(const GridFunction& f, double alpha, Side side, KernelPolicy policy) {
    require_integral_order(alpha);
    auto v = side == Side::left ? left_integral(f, alpha, policy, Sampling::left_node)
                                : right_adjoint_integral(f, alpha, policy);
    return GridFunction(f.mesh_ptr(), std::move(v));
}

double frac_integral_at(const GridFunction& f, double alpha, std::size_t node, KernelPolicy policy) {
    require_integral_order(alpha);
    if (node >= f.size()) throw DomainError("node index out of range");
    KernelRow row(f.mesh(), alpha, policy);
    const auto k = row(node);
    double sum = 0.0;
    for (std::size_t i = 0; i < node; ++i) sum += k[i] * f[i];
    return sum;
}

GridFunction rl_derivative(const GridFunction& f, double alpha, Side side) {
    require_derivative_order(alpha);
    if (f.size() < 2) throw DomainError("RL derivative needs at least two nodes");
    if (alpha == 1.0) return side == Side::left ? delta_derivative(f) : -delta_derivative(f);
    const Mesh& mesh = f.mesh();
    if (side == Side::left) {
        const auto j = left_integral(f, 1.0 - alpha, KernelPolicy::cell_averaged, Sampling::right_node);
        return GridFunction(f.mesh_ptr(), forward_quotient(mesh, j), true);
    }
    auto r = right_adjoint_integral(f, 1.0 - alpha, KernelPolicy::cell_averaged);
    auto d = forward_quotient(mesh, r);
    for (double& x : d) x = -x;
    return GridFunction(f.mesh_ptr(), std::move(d), true);
}

GridFunction caputo_derivative(const GridFunction& f, double alpha, Side side, KernelPolicy policy) {
    require_derivative_order(alpha);
    const GridFunction df = delta_derivative(f);
    if (alpha == 1.0) return side == Side::left ? df : -df;
    GridFunction r = frac_integral(df, 1.0 - alpha, side, policy);
    return side == Side::left ? r : -r;
}

GridFunction literal_right_integral(const GridFunction& phi, double alpha) {
    require_integral_order(alpha);
    const Mesh& mesh = phi.mesh();
    const TimeScale& ts = mesh.scale();
    const std::size_t n = mesh.size();
    const double scale = 1.0 / gamma_fn(alpha);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = ts.sigma(mesh.node(i));
        double sum = 0.0;
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            const double base = mesh.node(j) - s;
            if (base <= 0.0) continue;
            sum += mesh.measure(j) * std::pow(base, alpha - 1.0) * phi[j];
        }
        out[i] = sum * scale;
    }
    return GridFunction(phi.mesh_ptr(), std::move(out));
}

FracOperator::FracOperator(MeshPtr mesh, Eigen::MatrixXd matrix, double alpha, OperatorKind kind,
                           KernelPolicy policy)
    : mesh_(std::move(mesh)), matrix_(std::move(matrix)), alpha_(alpha), kind_(kind), policy_(policy) {
    const auto n = static_cast<Eigen::Index>(mesh_->size());
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DomainError("operator matrix does not match the mesh size");
}

GridFunction FracOperator::apply(const GridFunction& f) const {
    if (f.mesh_ptr() != mesh_) throw DomainError("operator applied to a function on another mesh");
    const Eigen::Map<const Eigen::VectorXd> x(f.values().data(), static_cast<Eigen::Index>(f.size()));
    Eigen::VectorXd y;
    switch (kind_) {
    case OperatorKind::integral_left: y = matrix_.triangularView<Eigen::StrictlyLower>() * x; break;
    case OperatorKind::integral_right_adjoint: y = matrix_.triangularView<Eigen::StrictlyUpper>() * x; break;
    case OperatorKind::rl_derivative_left: y = matrix_ * x; break;
    }
    return GridFunction(mesh_, std::vector<double>(y.data(), y.data() + y.size()),
                        kind_ == OperatorKind::rl_derivative_left);
}

FracOperator operator_matrix(MeshPtr mesh, double alpha, OperatorKind kind, KernelPolicy policy) {
    const std::size_t n = mesh->size();
    if (n > FracOperator::max_nodes)
        throw ResolutionError("operator matrix limited to " + std::to_string(FracOperator::max_nodes) +
                              " nodes, mesh has " + std::to_string(n));
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);

    switch (kind) {
    case OperatorKind::integral_left: {
        require_integral_order(alpha);
        KernelRow row(*mesh, alpha, policy);
        for (std::size_t j = 1; j < n; ++j) {
            const auto k = row(j);
            for (std::size_t i = 0; i < j; ++i) m(Eigen::Index(j), Eigen::Index(i)) = k[i];
        }
        break;
    }
    case OperatorKind::integral_right_adjoint: {
        require_integral_order(alpha);
        KernelRow row(*mesh, alpha, policy);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const auto k = row(j);
            for (std::size_t i = 0; i < j; ++i)
                m(Eigen::Index(i), Eigen::Index(j)) = k[i] * mesh->measure(j) / mesh->measure(i);
        }
        break;
    }
    case OperatorKind::rl_derivative_left: {
        require_derivative_order(alpha);
        policy = KernelPolicy::cell_averaged;
        if (n < 2) throw DomainError("RL derivative needs at least two nodes");
        // Right-node sampled (1-α)-integral, then forward quotient of rows.
        Eigen::MatrixXd j_mat = Eigen::MatrixXd::Zero(N, N);
        if (alpha == 1.0) {
            j_mat.setIdentity();
        } else {
            KernelRow row(*mesh, 1.0 - alpha, KernelPolicy::cell_averaged);
            for (std::size_t j = 1; j < n; ++j) {
                const auto k = row(j);
                for (std::size_t i = 0; i < j; ++i) j_mat(Eigen::Index(j), Eigen::Index(i + 1)) = k[i];
            }
        }
        for (Eigen::Index i = 0; i + 1 < N; ++i)
            m.row(i) = (j_mat.row(i + 1) - j_mat.row(i)) / mesh->measure(std::size_t(i));
        m.row(N - 1) = m.row(N - 2);
        break;
    }
    }
    return FracOperator(std::move(mesh), std::move(m), alpha, kind, policy);
}

} // namespace tsfrac
