#include <benchmark/benchmark.h>

#include "canopy/dynamics.hpp"
#include "canopy/edge_model.hpp"
#include "canopy/particle_model.hpp"
#include "canopy/walk_constants.hpp"

using namespace canopy;

static void BM_FiniteEdgeModel(benchmark::State& state) {
  Rng rng = make_rng(1);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_finite_edge_model(n, 2.0, 2, rng).multi_edge_count());
}
BENCHMARK(BM_FiniteEdgeModel)->Arg(6)->Arg(10)->Arg(14);

static void BM_WalkEndpoint(benchmark::State& state) {
  Rng rng = make_rng(2);
  auto method = state.range(1) ? WalkMethod::Exact : WalkMethod::Naive;
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_walk_endpoint(0, n, 2, rng, method));
}
BENCHMARK(BM_WalkEndpoint)->Args({8, 0})->Args({8, 1})->Args({14, 0})->Args({14, 1});

static void BM_ClusterExploration(benchmark::State& state) {
  Rng rng = make_rng(3);
  double lambda = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(explore_infinite_cluster(lambda, 2, rng).graph.n_vertices);
}
BENCHMARK(BM_ClusterExploration)->Arg(5)->Arg(10)->Arg(15);

static void BM_MafiaLimit(benchmark::State& state) {
  Rng rng = make_rng(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_mafia_limit(1.0, rng).graph.n_vertices);
}
BENCHMARK(BM_MafiaLimit);

static void BM_XiSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(walk::xi_inf(4, 2).mid());
}
BENCHMARK(BM_XiSeries);
