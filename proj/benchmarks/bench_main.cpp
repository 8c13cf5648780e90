#include <benchmark/benchmark.h>

#include "edgebip/generators.hpp"
#include "edgebip/pipeline.hpp"

using namespace edgebip;

static void BM_MinCostExtension(benchmark::State& state) {
  Rng rng(1);
  TermSepInstance inst = compression_termsep(rng, static_cast<int>(state.range(0)),
                                             3 * static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(min_cost_extension(inst, inst.seed));
}
BENCHMARK(BM_MinCostExtension)->Arg(20)->Arg(40)->Arg(80);

static void BM_ReduceExhaustively(benchmark::State& state) {
  Rng rng(2);
  TermSepInstance base = compression_termsep(rng, 30, 80, 6);
  base.k = 6;
  for (auto _ : state) {
    TermSepInstance inst = base;
    ReductionContext ctx;
    benchmark::DoNotOptimize(reduce_exhaustively(inst, ctx));
  }
}
BENCHMARK(BM_ReduceExhaustively);

static void BM_SolvePlanted(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  MultiGraph g = planted_instance(42, 40, k);
  long leaves = 0;
  for (auto _ : state) {
    SolveStats stats;
    benchmark::DoNotOptimize(solve_edge_bipartization(g, k, {}, &stats));
    leaves = stats.engine.leaves;
  }
  state.counters["leaves"] = static_cast<double>(leaves);
}
BENCHMARK(BM_SolvePlanted)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_GuoBaseline(benchmark::State& state) {
  Rng rng(3);
  TermSepInstance inst = compression_termsep(rng, 30, 70, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(guo_optimum(inst));
}
BENCHMARK(BM_GuoBaseline)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
