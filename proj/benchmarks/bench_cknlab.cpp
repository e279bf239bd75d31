#include <benchmark/benchmark.h>

#include "cknlab/cknlab.hpp"

using namespace cknlab;

namespace {

const CknParams& remaining_point() {
    static const CknParams P = make_params(4, 0.0, 0.3);
    return P;
}

void BM_EigenvalueClosed(benchmark::State& state) {
    const CknParams& P = remaining_point();
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalue_closed(P, 1, 2).lambda);
}
BENCHMARK(BM_EigenvalueClosed);

void BM_CoshPowerIntegral(benchmark::State& state) {
    double alpha = 3.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cosh_power_integral(alpha, 0.7));
        alpha = alpha < 9.0 ? alpha + 0.01 : 3.1;
    }
}
BENCHMARK(BM_CoshPowerIntegral);

void BM_SturmEigenvalues(benchmark::State& state) {
    const CknParams& P = remaining_point();
    const GridSpec g = default_oracle_grid(P, 1);
    for (auto _ : state) benchmark::DoNotOptimize(generalized_eigenvalues(P, 1, 3, g));
}
BENCHMARK(BM_SturmEigenvalues)->Unit(benchmark::kMillisecond);

void BM_DistanceToManifold(benchmark::State& state) {
    const SpacePtr sp = CylinderSpace::create(remaining_point());
    CylinderFunction v = psi_function(sp);
    v.axpy(0.05, rho10_function(sp));
    for (auto _ : state) benchmark::DoNotOptimize(distance_to_manifold(v).distance_sq);
}
BENCHMARK(BM_DistanceToManifold)->Unit(benchmark::kMicrosecond);

void BM_QuotientGradient(benchmark::State& state) {
    const SpacePtr sp = CylinderSpace::create(remaining_point());
    CylinderFunction v = psi_function(sp);
    v.axpy(0.05, rho10_function(sp));
    for (auto _ : state) benchmark::DoNotOptimize(quotient_gradient(v).report.value);
}
BENCHMARK(BM_QuotientGradient)->Unit(benchmark::kMicrosecond);

void BM_MinimizeShort(benchmark::State& state) {
    const CknParams& P = remaining_point();
    const SpacePtr sp = CylinderSpace::create(P);
    MinimizeConfig c;
    c.max_iterations = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(minimize_quotient(c, P, sp).value);
}
BENCHMARK(BM_MinimizeShort)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
