#include "tsfrac/sobolev.hpp"

#include <cmath>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"
#include "tsfrac/fractional.hpp"

namespace tsfrac {

SobolevParams SobolevParams::make(double alpha, double p) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha out of (0,1]: " + format_double(alpha));
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must exceed 1: " + format_double(p));
    return SobolevParams{alpha, p};
}

SobolevNorm sobolev_norm(const GridFunction& u, const SobolevParams& params) {
    constexpr auto rule = QuadraturePolicy::left_rectangle();
    const double lp = lp_norm(u, params.p, rule);
    const double semi = lp_norm(rl_derivative(u, params.alpha), params.p, rule);
    const double full = std::pow(std::pow(lp, params.p) + std::pow(semi, params.p), 1.0 / params.p);
    return {full, semi};
}

double equivalent_norm(const GridFunction& u, const SobolevParams& params) {
    const double semi = sobolev_norm(u, params).seminorm;
    if (params.alpha == 1.0) return semi;
    const double trace = frac_integral_at(u, 1.0 - params.alpha, 1);
    return std::pow(std::pow(std::fabs(trace), params.p) + std::pow(semi, params.p), 1.0 / params.p);
}

namespace {

double lp_constant(const SobolevParams& s, double length) {
    return std::pow(length, s.alpha) / gamma_fn(s.alpha + 1.0);
}

double sup_constant(const SobolevParams& s, double length) {
    const double q = s.q();
    return std::pow(length, s.alpha - 1.0 / s.p) /
           (gamma_fn(s.alpha) * std::pow((s.alpha - 1.0) * q + 1.0, 1.0 / q));
}

} // namespace

EmbeddingConstants embedding_bounds(const SobolevParams& params, double a, double b) {
    if (!(a >= 0.0) || !(b > a))
        throw DomainError("embedding constants need 0 <= a < b, got a = " + format_double(a) +
                          ", b = " + format_double(b));
    EmbeddingConstants c{};
    c.c_lp = lp_constant(params, b);
    c.c_lp_shifted = lp_constant(params, b - a);
    if (params.embeds_in_continuous()) {
        c.c_sup = sup_constant(params, b);
        c.c_sup_shifted = sup_constant(params, b - a);
    }
    c.a_is_zero = a == 0.0;
    return c;
}

double sup_embedding_constant(const SobolevParams& params, double b) {
    if (!params.embeds_in_continuous())
        throw DomainError("sup-norm embedding requires alpha > 1/p (alpha = " + format_double(params.alpha) +
                          ", p = " + format_double(params.p) + ")");
    if (!(b > 0.0)) throw DomainError("b must be positive");
    return sup_constant(params, b);
}

InequalityCheck make_check(std::string name, double lhs, double rhs, double constant) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.constant = constant;
    c.slack = rhs - lhs;
    c.pass = lhs <= rhs * (1.0 + embedding_tolerance);
    return c;
}

EmbeddingReport verify_embeddings(const GridFunction& u, const SobolevParams& params) {
    const Mesh& mesh = u.mesh();
    if (u[0] != 0.0) throw DomainError("embedding checks need u(a) = 0");
    const double c_sup = sup_embedding_constant(params, mesh.b());
    const auto consts = embedding_bounds(params, mesh.a(), mesh.b());

    const double semi = sobolev_norm(u, params).seminorm;
    const double lp = lp_norm(u, params.p, QuadraturePolicy::left_rectangle());

    EmbeddingReport report;
    report.checks.push_back(make_check("lp_embedding", lp, consts.c_lp * semi, consts.c_lp));
    report.checks.push_back(make_check("sup_embedding", sup_norm(u), c_sup * semi, c_sup));
    return report;
}

double holder_modulus(const SobolevParams& params, double seminorm) {
    if (!params.embeds_in_continuous())
        throw DomainError("Hölder modulus requires alpha > 1/p");
    const double q = params.q();
    return 2.0 * seminorm / (gamma_fn(params.alpha) * std::pow(1.0 + (params.alpha - 1.0) * q, 1.0 / q));
}

InequalityCheck verify_holder_modulus(const GridFunction& u, const SobolevParams& params) {
    const double semi = sobolev_norm(u, params).seminorm;
    const double c = holder_modulus(params, semi);
    const double gamma = params.alpha - 1.0 / params.p;
    const auto t = u.mesh().nodes();
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            const double ratio = std::fabs(u[j] - u[i]) / std::pow(t[j] - t[i], gamma);
            worst = std::max(worst, ratio);
        }
    return make_check("holder_modulus", worst, c, c);
}

} // namespace tsfrac
