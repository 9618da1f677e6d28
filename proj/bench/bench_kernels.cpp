#include <benchmark/benchmark.h>

#include "betanet/betatable.hpp"
#include "betanet/stepcdf.hpp"

using namespace betanet;

// exact CDF: serial DFS against the mod-class split
static void BM_ExactSerial(benchmark::State& st) {
    int N = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(exact_beta_cdf(N, 0.01).size());
}
BENCHMARK(BM_ExactSerial)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_ExactParallel(benchmark::State& st) {
    int N = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(exact_beta_cdf_parallel(N, 0.01, 4, 8).size());
}
BENCHMARK(BM_ExactParallel)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond)->UseRealTime();

// table cells, mixed exact and MC
static void table_build(benchmark::State& st, bool par) {
    TableGrids g;
    g.n_list = {40, 80, 250, 400};
    g.lower_ticks = generate_normalized_kl_list(0.25, 2, 1);
    g.upper_points = 3;
    BuildOptions o;
    o.parallel = par;
    for (auto _ : st) benchmark::DoNotOptimize(build_table(0.05, g, o).lower.size());
}
static void BM_TableSerial(benchmark::State& st) { table_build(st, false); }
static void BM_TableParallel(benchmark::State& st) { table_build(st, true); }
BENCHMARK(BM_TableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
