#include <benchmark/benchmark.h>

#include "fairaudit/rates.hpp"
#include "fairaudit/rng.hpp"

namespace {

fairaudit::Dataset synthetic_dataset(std::int64_t n) {
  fairaudit::SplitMix64 rng(7);
  fairaudit::Dataset d;
  d.records.reserve(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    fairaudit::Record r;
    r.id = std::to_string(i);
    r.group = i % 2 ? "b" : "w";
    r.score = 1 + static_cast<int>(rng.next() % 10);
    r.outcome = rng.uniform() < 0.45 ? 1 : 0;
    r.priors = static_cast<int>(rng.next() % 20);
    d.records.push_back(std::move(r));
  }
  return d;
}

void BM_ConfusionMatrix(benchmark::State& state) {
  const auto d = synthetic_dataset(state.range(0));
  for (auto _ : state) {
    auto m = fairaudit::confusion_matrix(d, 4);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConfusionMatrix)->Range(1 << 10, 1 << 20);

void BM_RatesFromMatrix(benchmark::State& state) {
  const fairaudit::ConfusionMatrix m{990, 805, 532, 1369};
  for (auto _ : state) {
    auto r = fairaudit::rates_from_matrix(m, 0.95);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RatesFromMatrix);

}  // namespace
