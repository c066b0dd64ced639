#include <benchmark/benchmark.h>

#include "contest/contest.hpp"

using namespace contest;

static void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureConfig quad{static_cast<int>(state.range(1)), QuadratureRule::trapezoid, false};
  const Policy p = two_level(n, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(ConvexCombo{0.3}, {2.0}, p, quad));
  state.SetItemsProcessed(state.iterations() * quad.m);
}
BENCHMARK(BM_Evaluate)->Args({5, 1000})->Args({5, 100000})->Args({50, 100000});

static void BM_PolicyEvaluator(benchmark::State& state) {
  const PolicyEvaluator eval(ConvexCombo{0.3}, 2.0, 5, {1000, QuadratureRule::trapezoid, false});
  const Policy p = two_level(5, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(eval(p.shares()));
}
BENCHMARK(BM_PolicyEvaluator);

static void BM_Gradient(benchmark::State& state) {
  const Policy p = two_level(static_cast<int>(state.range(0)), 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(ConvexCombo{0.3}, {2.0}, p));
}
BENCHMARK(BM_Gradient)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_HInverse(benchmark::State& state) {
  const Policy p = two_level(8, 0.5);
  double y = 0.0;
  for (auto _ : state) {
    y = y > 0.49 ? 0.01 : y + 0.01;
    benchmark::DoNotOptimize(h_inverse(p, y));
  }
}
BENCHMARK(BM_HInverse);

static void BM_BranchAndBound(benchmark::State& state) {
  BnbConfig cfg;
  cfg.epsilon = state.range(0) == 3 ? 1e-3 : 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(branch_and_bound(5, 0.24, 1.8, cfg).value);
}
BENCHMARK(BM_BranchAndBound)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_LineSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(two_level_line_search(ConvexCombo{0.24}, 1.8, 5).value);
}
BENCHMARK(BM_LineSearch)->Unit(benchmark::kMillisecond);

static void BM_GridSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(ConvexCombo{0.24}, 2.0, 5, 0.02).value);
}
BENCHMARK(BM_GridSearch)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  const EquilibriumModel model(hm(5), {2.0});
  for (auto _ : state) benchmark::DoNotOptimize(simulate(model, 100000, 1).empirical_quality);
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

static void BM_SchurDirection(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(schur_direction(1.5, 5, 20, 1).min_difference);
}
BENCHMARK(BM_SchurDirection)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
