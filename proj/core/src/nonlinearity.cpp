#include "tsfrac/nonlinearity.hpp"

#include <cmath>
#include <limits>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

double potential(const Nonlinearity& g, std::size_t node, double x) {
    return std::visit(
        overloaded{
            [x](const PowerNonlinearity& pw) {
                return pw.c * std::pow(std::fabs(x), pw.ar_exponent) / pw.ar_exponent;
            },
            [x, node](const WeightedPowerNonlinearity& wp) {
                return wp.d[node] * std::pow(std::fabs(x), wp.r);
            }},
        g);
}

double potential_gradient(const Nonlinearity& g, std::size_t node, double x) {
    if (x == 0.0) return 0.0;
    return std::visit(
        overloaded{
            [x](const PowerNonlinearity& pw) {
                return pw.c * std::pow(std::fabs(x), pw.ar_exponent - 2.0) * x;
            },
            [x, node](const WeightedPowerNonlinearity& wp) {
                return std::copysign(wp.r * wp.d[node] * std::pow(std::fabs(x), wp.r - 1.0), x);
            }},
        g);
}

double potential_curvature(const Nonlinearity& g, std::size_t node, double x) {
    return std::visit(
        overloaded{
            [x](const PowerNonlinearity& pw) {
                return pw.c * (pw.ar_exponent - 1.0) * std::pow(std::fabs(x), pw.ar_exponent - 2.0);
            },
            [x, node](const WeightedPowerNonlinearity& wp) {
                if (x == 0.0 && wp.r < 2.0)
                    return wp.d[node] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
                return wp.r * (wp.r - 1.0) * wp.d[node] * std::pow(std::fabs(x), wp.r - 2.0);
            }},
        g);
}

void validate(const Nonlinearity& g, double p) {
    std::visit(overloaded{
                   [p](const PowerNonlinearity& pw) {
                       if (!(pw.c > 0.0)) throw DomainError("power nonlinearity needs c > 0");
                       if (!(pw.ar_exponent > p * p))
                           throw DomainError("ar_exponent must exceed p^2 = " + format_double(p * p));
                   },
                   [p](const WeightedPowerNonlinearity& wp) {
                       if (!(wp.r > 1.0 && wp.r < p * p))
                           throw DomainError("weighted power exponent r must lie in (1, p^2 = " +
                                             format_double(p * p) + ")");
                       bool positive = false;
                       for (double v : wp.d.values()) {
                           if (v < 0.0) throw DomainError("weight d must be nonnegative");
                           positive = positive || v > 0.0;
                       }
                       if (!positive) throw DomainError("weight d must not vanish identically");
                   }},
               g);
}

bool is_superlinear(const Nonlinearity& g) noexcept {
    return std::holds_alternative<PowerNonlinearity>(g);
}

} // namespace tsfrac
