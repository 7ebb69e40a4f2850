// Serial reference scan versus the OpenMP scan over the Bell-decomposable grid.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "bdsep/search.hpp"

namespace {

bdsep::ScanConfig make_config(const benchmark::State& state) {
  bdsep::ScanConfig config;
  config.divisions = static_cast<int>(state.range(0));
  config.closed_form_only = state.range(1) != 0;
  return config;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto config = make_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(bdsep::scan_bd_simplex_serial(config));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(bdsep::composition_count(config.divisions)));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto config = make_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(bdsep::scan_bd_simplex(config));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(bdsep::composition_count(config.divisions)));
  state.counters["threads"] = omp_get_max_threads();
}

// Args: {divisions, closed_form_only}
#define SCAN_ARGS ArgsProduct({{10, 20, 30}, {0, 1}})->Unit(benchmark::kMillisecond)

BENCHMARK(BM_ScanSerial)->SCAN_ARGS;
BENCHMARK(BM_ScanParallel)->SCAN_ARGS->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
