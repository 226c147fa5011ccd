#include <benchmark/benchmark.h>

#include "fairaudit/simulate.hpp"

namespace {

void BM_GeneratePopulation(benchmark::State& state) {
  fairaudit::SimConfig cfg;
  cfg.n_b = cfg.n_w = state.range(0);
  for (auto _ : state) {
    auto d = fairaudit::generate_population(cfg);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_GeneratePopulation)->Range(1 << 12, 1 << 17);

}  // namespace

BENCHMARK_MAIN();
