#include <benchmark/benchmark.h>

#include <cmath>

#include "plap/degiorgi.hpp"
#include "plap/quadrature.hpp"
#include "plap/scenarios.hpp"
#include "plap/solver.hpp"

namespace {

void BM_StepImplicit(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int nx = static_cast<int>(state.range(1));
  const double p = static_cast<double>(state.range(2)) / 10.0;
  const plap::Grid g(dim, 1.0, nx, 2, 1e-3);
  const plap::Problem prob = plap::random_problem(g, 1, 3, 1.0);
  const plap::SolverConfig cfg(plap::StructureParams::first_bound(dim, p));
  for (auto _ : state) {
    auto step = plap::step_implicit(g, prob.initial, cfg, prob.boundary, 1);
    benchmark::DoNotOptimize(step.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.nodes_per_slice()));
}
BENCHMARK(BM_StepImplicit)
    ->Args({1, 201, 20})
    ->Args({1, 201, 30})
    ->Args({1, 801, 18})
    ->Args({2, 31, 20})
    ->Args({2, 61, 25})
    ->Unit(benchmark::kMillisecond);

void BM_ComputeYi(benchmark::State& state) {
  const int nx = static_cast<int>(state.range(0));
  const plap::Grid g(2, 1.0, nx, 21, 0.01);
  const plap::SpaceTimeField u = plap::SpaceTimeField::from_function(
      g, [](const plap::Point& x, double t) { return 1.0 + std::sin(3 * x[0]) * std::cos(2 * x[1] + t); });
  const plap::ShrinkSchedule s(0.5, plap::Cylinder(0.9, 0.09));
  const auto params = plap::StructureParams::first_bound(2, 2.5);
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plap::compute_Yi(u, s, 2.0, params, i));
    i = (i + 1) % 10;
  }
}
BENCHMARK(BM_ComputeYi)->Arg(31)->Arg(61)->Arg(121)->Unit(benchmark::kMicrosecond);

void BM_CylinderQuadrature(benchmark::State& state) {
  const int nx = static_cast<int>(state.range(0));
  const plap::Grid g(2, 1.0, nx, 11, 0.01);
  for (auto _ : state) {
    const plap::CylinderQuadrature q(g, plap::Cylinder(0.77, 0.04));
    benchmark::DoNotOptimize(q.space().data());
  }
}
BENCHMARK(BM_CylinderQuadrature)->Arg(61)->Arg(241)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
