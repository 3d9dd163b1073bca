#include <benchmark/benchmark.h>

#include <random>

#include "curvelab/curvature.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/heat.hpp"
#include "curvelab/transport.hpp"

using namespace curvelab;

namespace {

WeightedGraph bench_graph(int n, int cap) {
  std::mt19937_64 rng(99);
  RandomGraphOptions opt;
  opt.n = n;
  opt.edge_prob = 3.0 / n;
  opt.max_degree = cap;
  opt.random_weights = true;
  opt.random_measures = true;
  return make_random(opt, rng);
}

void BM_OllivierDual(benchmark::State& state) {
  auto g = bench_graph(static_cast<int>(state.range(0)), 6);
  auto e = g.edges()[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(ollivier_dual(g, e.u, e.v).kappa);
}
BENCHMARK(BM_OllivierDual)->Arg(20)->Arg(40)->Arg(80);

void BM_OllivierCombinatorial(benchmark::State& state) {
  auto g = make_hypercube(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(ollivier_combinatorial(g, 0, 1).kappa);
}
BENCHMARK(BM_OllivierCombinatorial)->Arg(3)->Arg(5)->Arg(7);

void BM_RicLowerBound(benchmark::State& state) {
  auto g = bench_graph(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(ric_lower_bound(g));
}
BENCHMARK(BM_RicLowerBound)->Arg(20)->Arg(40);

void BM_Wasserstein(benchmark::State& state) {
  auto g = bench_graph(static_cast<int>(state.range(0)), 0);
  HeatPropagator prop(g);
  auto a = prop.heat_kernel(0.25, 0);
  auto b = prop.heat_kernel(0.25, g.size() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(g, a, b).value);
}
BENCHMARK(BM_Wasserstein)->Arg(20)->Arg(40)->Arg(80);

void BM_Propagator(benchmark::State& state) {
  auto g = bench_graph(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    HeatPropagator prop(g);
    benchmark::DoNotOptimize(prop.eigenvalues()[0]);
  }
}
BENCHMARK(BM_Propagator)->Arg(50)->Arg(150);

void BM_CutoffLimit(benchmark::State& state) {
  auto g = bench_graph(12, 0);
  HeatPropagator prop(g);
  std::vector<double> phi(g.size(), 0.8), f(g.size(), 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(cutoff_semigroup_limit(prop, phi, 0.5, f).values[0]);
}
BENCHMARK(BM_CutoffLimit);

}  // namespace

BENCHMARK_MAIN();
