#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "oracles.hpp"
#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/errors.hpp"
#include "tsfrac/fractional.hpp"
#include "tsfrac/sobolev.hpp"

using namespace tsfrac;

namespace {

MeshPtr integers() { return build_mesh(TimeScale::build({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), 1.0); }
MeshPtr mixed(double h) { return build_mesh(TimeScale::build({{0, 0}, {1, 2}, {3, 3}}), h); }
MeshPtr unit(double h) { return build_mesh(TimeScale::build({{0, 1}}), h); }

double c_sup_ref(double alpha, double p, double b) {
    const double q = p / (p - 1);
    return std::pow(b, alpha - 1 / p) / (oracle::gamma_ref(alpha) * std::pow((alpha - 1) * q + 1, 1 / q));
}

MeshPtr random_mesh(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0, 1);
    const int family = std::uniform_int_distribution<int>(0, 2)(rng);
    std::vector<Segment> segs;
    double t = 0;
    const int count = std::uniform_int_distribution<int>(2, 6)(rng);
    for (int k = 0; k < count; ++k) {
        double len = 0.0;
        if (family == 0) len = k == 0 ? 0.3 + u01(rng) : 0.0;          // one interval then points
        if (family == 2) len = u01(rng) < 0.5 ? 0.0 : 0.1 + u01(rng);  // mixed
        segs.push_back({t, t + len});
        t += len + 0.05 + u01(rng);
    }
    if (family == 0) segs.resize(1);
    return build_mesh(TimeScale::build(segs), 0.01 + 0.1 * u01(rng));
}

} // namespace

TEST(SobolevParams, Ranges) {
    EXPECT_THROW(SobolevParams::make(0.0, 2.0), DomainError);
    EXPECT_THROW(SobolevParams::make(1.2, 2.0), DomainError);
    EXPECT_THROW(SobolevParams::make(0.5, 1.0), DomainError);
    const auto s = SobolevParams::make(0.8, 3.0);
    EXPECT_DOUBLE_EQ(s.q(), 1.5);
    EXPECT_TRUE(s.embeds_in_continuous());
    EXPECT_FALSE(SobolevParams::make(0.5, 2.0).embeds_in_continuous());
}

TEST(SobolevNorm, Examples) {
    const auto zero = sobolev_norm(GridFunction::constant(unit(0.1), 0.0), SobolevParams::make(0.7, 2));
    EXPECT_EQ(zero.full, 0.0);
    EXPECT_EQ(zero.seminorm, 0.0);

    const auto u = GridFunction(integers(), {0, 1, 1, 0});
    EXPECT_NEAR(sobolev_norm(u, SobolevParams::make(1.0, 2)).seminorm, std::sqrt(2.0), 1e-15);

    std::vector<double> errs;
    for (double h : {1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024}) {
        const auto m = unit(h);
        const auto v = frac_integral(GridFunction::constant(m, 1.0), 0.5);
        errs.push_back(std::fabs(sobolev_norm(v, SobolevParams::make(0.5, 2)).seminorm - 1.0));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_LT(errs[i], errs[i - 1]);
    EXPECT_LT(errs.back(), 1e-2);
}

TEST(SobolevNorm, FullDominatesSeminorm) {
    std::mt19937_64 rng(21);
    for (int d = 0; d < 200; ++d) {
        const auto m = random_mesh(rng);
        const auto u = GridFunction(m, oracle::uniform_values(rng, m->size()));
        const auto n = sobolev_norm(u, SobolevParams::make(0.3 + 0.7 * (d % 8) / 7.0, 1.5 + d % 3));
        ASSERT_GE(n.full, n.seminorm);
    }
}

TEST(EquivalentNorm, Examples) {
    const auto p08 = SobolevParams::make(0.8, 2);
    EXPECT_EQ(equivalent_norm(GridFunction::constant(unit(0.1), 0.0), p08), 0.0);

    // the trace term I^{1-alpha}u at the first node vanishes as h -> 0 when u(a) = 0
    std::vector<double> gaps;
    for (double h : {1.0 / 64, 1.0 / 256, 1.0 / 1024}) {
        const auto u = GridFunction::sample(unit(h), [](double t) { return 1 + std::sin(3 * t); });
        const double e = equivalent_norm(u, p08), s = sobolev_norm(u, p08).seminorm;
        const double trace = frac_integral_at(u, 0.2, 1);
        EXPECT_NEAR(e * e, trace * trace + s * s, 1e-10 * e * e);
        gaps.push_back(std::fabs(trace));
    }
    EXPECT_GT(gaps[0], 0.0);
    EXPECT_LT(gaps[1], gaps[0]);
    EXPECT_LT(gaps[2], gaps[1]);

    const auto u = GridFunction::sample(mixed(0.25), [](double t) { return t * (3 - t); });
    const auto p1 = SobolevParams::make(1.0, 2);
    EXPECT_EQ(equivalent_norm(u, p1), sobolev_norm(u, p1).seminorm);
}

TEST(EmbeddingBounds, Constants) {
    EXPECT_NEAR(embedding_bounds(SobolevParams::make(0.5, 2), 0, 1).c_lp, 1.1283792, 1e-7);
    const auto c = embedding_bounds(SobolevParams::make(0.8, 2), 0, 1);
    EXPECT_NEAR(c.c_lp, 1.0 / oracle::gamma_ref(1.8), 1e-12);
    EXPECT_NEAR(c.c_lp, 1.0736712740, 1e-9);
    ASSERT_TRUE(c.c_sup.has_value());
    EXPECT_NEAR(*c.c_sup, 1.0 / (oracle::gamma_ref(0.8) * std::sqrt(0.6)), 1e-12);
    EXPECT_NEAR(*c.c_sup, 1.10889, 1e-5);
    EXPECT_TRUE(c.a_is_zero);
    EXPECT_EQ(embedding_bounds(SobolevParams::make(1.0, 3), 0, 1).c_lp, 1.0);
    EXPECT_FALSE(embedding_bounds(SobolevParams::make(0.5, 2), 0, 1).c_sup.has_value());
    EXPECT_THROW(sup_embedding_constant(SobolevParams::make(0.5, 2), 1), DomainError);

    const auto s = embedding_bounds(SobolevParams::make(0.7, 3), 0.5, 2.0);
    EXPECT_FALSE(s.a_is_zero);
    EXPECT_NEAR(s.c_lp, std::pow(2.0, 0.7) / oracle::gamma_ref(1.7), 1e-12);
    EXPECT_NEAR(s.c_lp_shifted, std::pow(1.5, 0.7) / oracle::gamma_ref(1.7), 1e-12);
    EXPECT_NEAR(*s.c_sup, c_sup_ref(0.7, 3, 2.0), 1e-12);
    EXPECT_NEAR(*s.c_sup_shifted, c_sup_ref(0.7, 3, 1.5), 1e-12);
    EXPECT_THROW(embedding_bounds(SobolevParams::make(0.7, 3), -1.0, 2.0), DomainError);
    EXPECT_THROW(embedding_bounds(SobolevParams::make(0.7, 3), 2.0, 2.0), DomainError);
}

TEST(HolderModulus, Examples) {
    EXPECT_EQ(holder_modulus(SobolevParams::make(0.8, 2), 0.0), 0.0);
    EXPECT_NEAR(holder_modulus(SobolevParams::make(0.8, 2), 1.0), 2.0 / (oracle::gamma_ref(0.8) * std::sqrt(0.6)),
                1e-12);
    EXPECT_NEAR(holder_modulus(SobolevParams::make(0.8, 2), 1.0), 2.21778, 2e-5);
    EXPECT_THROW(holder_modulus(SobolevParams::make(0.5, 2), 1.0), DomainError);
}

TEST(VerifyEmbeddings, Preconditions) {
    const auto zero = verify_embeddings(GridFunction::constant(unit(0.1), 0.0), SobolevParams::make(0.8, 2));
    EXPECT_TRUE(zero.pass());
    for (const auto& c : zero.checks) EXPECT_EQ(c.slack, 0.0);
    EXPECT_THROW(verify_embeddings(GridFunction::constant(unit(0.1), 0.0), SobolevParams::make(0.5, 2)), DomainError);
    EXPECT_THROW(verify_embeddings(GridFunction::constant(unit(0.1), 1.0), SobolevParams::make(0.8, 2)), DomainError);
}

TEST(VerifyEmbeddings, HoldOnImageSpace) {
    std::mt19937_64 rng(22);
    const double alphas[] = {0.6, 0.8, 1.0};
    std::vector<MeshPtr> presets{unit(1.0 / 128), integers(), mixed(1.0 / 32)};
    for (int d = 0; d < 1500; ++d) {
        const MeshPtr m = d < 1000 ? presets[d % 3] : random_mesh(rng);
        const double alpha = alphas[(d / 3) % 3];
        const auto params = SobolevParams::make(alpha, 2.0);
        const auto u = frac_integral(GridFunction(m, oracle::uniform_values(rng, m->size())), alpha);
        const auto report = verify_embeddings(u, params);
        ASSERT_TRUE(report.pass()) << "draw " << d;
        const auto holder = verify_holder_modulus(u, params);
        ASSERT_TRUE(holder.pass) << "draw " << d << " " << holder.lhs << " > " << holder.rhs;
    }
}

TEST(Seminorm, DefiniteOnZeroTraceFunctions) {
    for (const auto& m : {unit(1.0 / 64), integers(), mixed(0.125)})
        for (double alpha : {0.3, 0.6, 1.0}) {
            const auto d = operator_matrix(m, alpha, OperatorKind::rl_derivative_left).matrix();
            const auto n = d.rows();
            // rows with positive weight, columns of nodes after a
            const Eigen::MatrixXd block = d.block(0, 1, n - 1, n - 1);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
            EXPECT_GT(svd.singularValues().minCoeff(), 1e-8) << alpha;
        }
}
