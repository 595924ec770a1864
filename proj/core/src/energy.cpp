#include "tsfrac/energy.hpp"

#include <algorithm>
#include <cmath>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"
#include "tsfrac/fractional.hpp"

namespace tsfrac {

double phi_p(double y, double p) {
    if (y == 0.0) return 0.0;
    return std::pow(std::fabs(y), p - 2.0) * y;
}

namespace {

void validate(const BvpProblem& pr) {
    if (!pr.mesh) throw DomainError("problem has no mesh");
    if (pr.mesh->size() < 3) throw DomainError("problem needs at least one interior node");
    if (!(pr.p > 1.0) || !std::isfinite(pr.p)) throw DomainError("p must exceed 1");
    if (!(pr.alpha > 0.0 && pr.alpha <= 1.0)) throw DomainError("alpha out of (0,1]");
    if (!(pr.alpha * pr.p > 1.0))
        throw DomainError("alpha must exceed 1/p (alpha = " + format_double(pr.alpha) +
                          ", p = " + format_double(pr.p) + ")");
    if (!(pr.beta > 0.0)) throw DomainError("beta must be positive");
    if (!(pr.kirchhoff_rho > 0.0)) throw DomainError("kirchhoff rho must be positive");
    if (pr.lambda.mesh_ptr() != pr.mesh) throw DomainError("lambda lives on another mesh");
    const auto lam = pr.lambda.values();
    const bool all_zero = std::all_of(lam.begin(), lam.end(), [](double v) { return v == 0.0; });
    const bool all_positive = std::all_of(lam.begin(), lam.end(), [](double v) { return v > 0.0; });
    if (!all_zero && !all_positive) throw DomainError("lambda must be positive at every node");
    if (const auto* wp = std::get_if<WeightedPowerNonlinearity>(&pr.nonlinearity))
        if (wp->d.mesh_ptr() != pr.mesh) throw DomainError("weight d lives on another mesh");
    tsfrac::validate(pr.nonlinearity, pr.p);
}

} // namespace

EnergyModel assemble(BvpProblem problem) {
    validate(problem);
    EnergyModel model(std::move(problem));
    const Mesh& mesh = *model.problem_.mesh;
    const auto n = static_cast<Eigen::Index>(mesh.size());
    const Eigen::Index m = n - 2;

    const auto full = operator_matrix(model.problem_.mesh, model.problem_.alpha, OperatorKind::rl_derivative_left);
    model.derivative_ = full.matrix().middleCols(1, m);

    const auto w = quadrature_weights(mesh, QuadraturePolicy::left_rectangle());
    model.weights_ = Eigen::Map<const Eigen::VectorXd>(w.data(), n);

    model.lambda_weights_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i)
        model.lambda_weights_[i] = model.weights_[i + 1] * model.problem_.lambda[std::size_t(i + 1)];

    const Eigen::MatrixXd metric =
        model.derivative_.transpose() * model.weights_.asDiagonal() * model.derivative_;
    model.metric_.compute(metric);
    if (model.metric_.info() != Eigen::Success)
        throw DomainError("seminorm Gram matrix is not positive definite");

    const double p = model.problem_.p;
    model.unit_norms_.resize(std::size_t(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        double s = 0.0;
        for (Eigen::Index t = 0; t < n; ++t)
            s += model.weights_[t] * std::pow(std::fabs(model.derivative_(t, i)), p);
        model.unit_norms_[std::size_t(i)] = std::pow(s, 1.0 / p);
    }
    return model;
}

double EnergyModel::kirchhoff_integral(const Vector& u) const {
    const Vector du = derivative_ * u;
    const double p = problem_.p;
    double s = 0.0;
    for (Eigen::Index t = 0; t < du.size(); ++t) s += weights_[t] * std::pow(std::fabs(du[t]), p);
    return s;
}

double EnergyModel::seminorm(const Vector& v) const {
    return std::pow(kirchhoff_integral(v), 1.0 / problem_.p);
}

double EnergyModel::energy(const Vector& u) const {
    const double p = problem_.p;
    const double beta = problem_.beta;
    const double rho = problem_.kirchhoff_rho;
    const double s = kirchhoff_integral(u);
    const double kirchhoff = (std::pow(beta + rho * s, p) - std::pow(beta, p)) / (rho * p * p);
    double potential_term = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (lambda_weights_[i] != 0.0)
            potential_term += lambda_weights_[i] * potential(problem_.nonlinearity, std::size_t(i + 1), u[i]);
    return kirchhoff - potential_term;
}

EnergyModel::Vector EnergyModel::gradient(const Vector& u) const {
    const double p = problem_.p;
    const Vector du = derivative_ * u;
    Vector flux(du.size());
    double s = 0.0;
    for (Eigen::Index t = 0; t < du.size(); ++t) {
        s += weights_[t] * std::pow(std::fabs(du[t]), p);
        flux[t] = weights_[t] * phi_p(du[t], p);
    }
    const double coeff = std::pow(problem_.beta + problem_.kirchhoff_rho * s, p - 1.0);
    Vector g = coeff * (derivative_.transpose() * flux);
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (lambda_weights_[i] != 0.0)
            g[i] -= lambda_weights_[i] * potential_gradient(problem_.nonlinearity, std::size_t(i + 1), u[i]);
    return g;
}

Eigen::MatrixXd EnergyModel::hessian(const Vector& u) const {
    const double p = problem_.p;
    const double beta = problem_.beta;
    const double rho = problem_.kirchhoff_rho;
    const Vector du = derivative_ * u;
    Vector flux(du.size());
    Vector curv(du.size());
    double s = 0.0;
    for (Eigen::Index t = 0; t < du.size(); ++t) {
        const double a = std::fabs(du[t]);
        s += weights_[t] * std::pow(a, p);
        flux[t] = weights_[t] * phi_p(du[t], p);
        curv[t] = weights_[t] == 0.0 ? 0.0 : weights_[t] * (p - 1.0) * std::pow(a, p - 2.0);
    }
    const double base = beta + rho * s;
    const Vector g1 = derivative_.transpose() * flux;
    Eigen::MatrixXd h = std::pow(base, p - 1.0) * (derivative_.transpose() * curv.asDiagonal() * derivative_);
    h.noalias() += (rho * p * (p - 1.0) * std::pow(base, p - 2.0)) * (g1 * g1.transpose());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (lambda_weights_[i] != 0.0)
            h(i, i) -= lambda_weights_[i] * potential_curvature(problem_.nonlinearity, std::size_t(i + 1), u[i]);
    return h;
}

EnergyModel::Vector EnergyModel::riesz(const Vector& g) const { return metric_.solve(g); }

GridFunction EnergyModel::embed(const Vector& u) const {
    std::vector<double> v(mesh().size(), 0.0);
    for (Eigen::Index i = 0; i < u.size(); ++i) v[std::size_t(i + 1)] = u[i];
    return GridFunction(problem_.mesh, std::move(v));
}

EnergyModel::Vector EnergyModel::restrict(const GridFunction& u) const {
    if (u.mesh_ptr() != problem_.mesh) throw DomainError("grid function lives on another mesh");
    Vector v(dofs());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u[std::size_t(i + 1)];
    return v;
}

double fd_gradient_check(const EnergyModel& model, const EnergyModel::Vector& u, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    const EnergyModel::Vector g = model.gradient(u);
    const double h = epsilon * std::max(1.0, u.cwiseAbs().maxCoeff());
    double worst = 0.0;
    EnergyModel::Vector probe = u;
    const double scale = g.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        probe[i] = u[i] + h;
        const double ep = model.energy(probe);
        probe[i] = u[i] - h;
        const double em = model.energy(probe);
        probe[i] = u[i];
        const double fd = (ep - em) / (2.0 * h);
        const double err = std::fabs(fd - g[i]);
        if (err == 0.0) continue;
        worst = std::max(worst, scale > 0.0 ? err / scale : err);
    }
    return worst;
}

double weak_residual(const EnergyModel& model, const EnergyModel::Vector& u) {
    const EnergyModel::Vector g = model.gradient(u);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::fabs(g[i]) / model.unit_seminorm(i));
    return worst;
}

} // namespace tsfrac
