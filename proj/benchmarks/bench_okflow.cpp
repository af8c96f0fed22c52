#include <benchmark/benchmark.h>

#include "okflow/energy.hpp"
#include "okflow/fixtures.hpp"
#include "okflow/flow.hpp"
#include "okflow/potential.hpp"
#include "okflow/variation.hpp"

using namespace okflow;

namespace {

void BM_PhiTriangulated(benchmark::State& state) {
  const Region e = fixtures::circle(1.0, static_cast<std::size_t>(state.range(0)));
  const PotentialEvaluator ev(triangulate(e), Kernel::log(), QuadratureSpec{});
  for (auto _ : state) benchmark::DoNotOptimize(ev({0.1, 0.2}));
}
BENCHMARK(BM_PhiTriangulated)->Arg(256)->Arg(1024)->Arg(4096);

void BM_PhiEdgePolar(benchmark::State& state) {
  const Region e = fixtures::circle(1.0, static_cast<std::size_t>(state.range(0)));
  const PotentialEvaluator ev(triangulate(e), Kernel::riesz(0.5), QuadratureSpec::edge_polar());
  for (auto _ : state) benchmark::DoNotOptimize(ev({0.1, 0.2}));
}
BENCHMARK(BM_PhiEdgePolar)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Energy(benchmark::State& state) {
  const Region e = fixtures::perturbed_circle(0.1, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        energy(e, Kernel::log(), 1.0, ExternalPotential::zero(), QuadratureSpec::edge_polar()).total);
}
BENCHMARK(BM_Energy)->Arg(128)->Arg(256);

void BM_FirstVariation(benchmark::State& state) {
  const Region e = fixtures::perturbed_circle(0.1, 3, 128);
  const VariationContext ctx(e, Kernel::log(), 1.0, ExternalPotential::zero());
  const TestField X = TestField::bump({1.0, 0.0}, 0.4, {1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(ctx(X).total);
}
BENCHMARK(BM_FirstVariation);

void BM_FlowStep(benchmark::State& state) {
  const Region e = fixtures::perturbed_circle(0.1, 3, static_cast<std::size_t>(state.range(0)));
  const FlowConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(step(e, Kernel::log(), 0.2, ExternalPotential::zero(), cfg, 1e-5).dt);
}
BENCHMARK(BM_FlowStep)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
