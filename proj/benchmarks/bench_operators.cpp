#include <benchmark/benchmark.h>

#include <cmath>

#include "tsfrac/fractional.hpp"
#include "tsfrac/solver.hpp"

using namespace tsfrac;

namespace {

MeshPtr unit_mesh(benchmark::State& state) {
    return build_mesh(TimeScale::build({{0.0, 1.0}}), 1.0 / static_cast<double>(state.range(0)));
}

EnergyModel desk_model(const MeshPtr& m, Nonlinearity g) {
    return assemble(BvpProblem{m, 0.8, 2.0, 1.0, 1.0, GridFunction::constant(m, 1.0), std::move(g)});
}

} // namespace

static void BM_FracIntegral(benchmark::State& state) {
    const auto m = unit_mesh(state);
    const auto f = GridFunction::sample(m, [](double t) { return std::cos(t); });
    for (auto _ : state) benchmark::DoNotOptimize(frac_integral(f, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracIntegral)->RangeMultiplier(2)->Range(128, 4096)->Complexity(benchmark::oNSquared);

static void BM_RlDerivative(benchmark::State& state) {
    const auto m = unit_mesh(state);
    const auto f = GridFunction::sample(m, [](double t) { return std::sin(3 * t); });
    for (auto _ : state) benchmark::DoNotOptimize(rl_derivative(f, 0.8));
}
BENCHMARK(BM_RlDerivative)->RangeMultiplier(2)->Range(128, 2048);

static void BM_OperatorMatrix(benchmark::State& state) {
    const auto m = unit_mesh(state);
    for (auto _ : state) benchmark::DoNotOptimize(operator_matrix(m, 0.8, OperatorKind::rl_derivative_left));
}
BENCHMARK(BM_OperatorMatrix)->RangeMultiplier(2)->Range(128, 1024);

static void BM_EnergyAndGradient(benchmark::State& state) {
    const auto m = unit_mesh(state);
    const auto model = desk_model(m, PowerNonlinearity{1.0, 6.0});
    const EnergyModel::Vector u = bump(model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.energy(u));
        benchmark::DoNotOptimize(model.gradient(u));
    }
}
BENCHMARK(BM_EnergyAndGradient)->RangeMultiplier(2)->Range(64, 1024);

static void BM_MountainPass(benchmark::State& state) {
    const auto m = unit_mesh(state);
    const auto model = desk_model(m, PowerNonlinearity{1.0, 6.0});
    for (auto _ : state) benchmark::DoNotOptimize(mountain_pass(model));
}
BENCHMARK(BM_MountainPass)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Minimize(benchmark::State& state) {
    const auto m = unit_mesh(state);
    const auto model = desk_model(m, WeightedPowerNonlinearity{GridFunction::constant(m, 1.0), 1.5});
    const EnergyModel::Vector u0 = 0.1 * bump(model);
    for (auto _ : state) benchmark::DoNotOptimize(minimize(model, u0));
}
BENCHMARK(BM_Minimize)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
