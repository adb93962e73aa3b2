#include <benchmark/benchmark.h>

#include "resmap/bounds.hpp"
#include "resmap/runs.hpp"
#include "resmap/search.hpp"

using namespace resmap;

static void BM_ModPow(benchmark::State& state) {
  const u64 p = 4611686018427387847ULL;
  u64 x = 3;
  for (auto _ : state) {
    x = mod_pow(x, p - 2, p);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ModPow);

static void BM_PowerTable(benchmark::State& state) {
  const Prime p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(power_table(p, (p.value() + 1) / 2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowerTable)->Arg(1009)->Arg(19997);

static void BM_Classify(benchmark::State& state) {
  const PowerMap f(Prime(19997), 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(classify(f, static_cast<u32>(state.range(0))));
}
BENCHMARK(BM_Classify)->Arg(3)->Arg(12)->Arg(86);

static void BM_ClassifyQuick(benchmark::State& state) {
  const PowerMap f(Prime(19997), 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_quick(f, static_cast<u32>(state.range(0)), kTypeIII));
}
BENCHMARK(BM_ClassifyQuick)->Arg(3)->Arg(12)->Arg(86);

static void BM_SearchDesk(benchmark::State& state) {
  SearchSpec spec;
  spec.n_min = 3;
  spec.n_max = 12;
  spec.p_max = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_search(spec));
}
BENCHMARK(BM_SearchDesk)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_QrRuns(benchmark::State& state) {
  const Prime p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qr_runs(p));
}
BENCHMARK(BM_QrRuns)->Arg(99991);

static void BM_Census(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_census(static_cast<u64>(state.range(0)), 10));
}
BENCHMARK(BM_Census)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_Kloosterman(benchmark::State& state) {
  const Prime p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_max(p));
}
BENCHMARK(BM_Kloosterman)->Arg(499)->Unit(benchmark::kMillisecond);

static void BM_MijSweep(benchmark::State& state) {
  const Prime p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mij_sweep(p));
}
BENCHMARK(BM_MijSweep)->Arg(211)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
