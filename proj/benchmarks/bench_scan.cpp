#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "lspec/oscillatory_sum.hpp"
#include "lspec/prime_stream.hpp"

namespace {

lspec::TermTable table_for(std::uint64_t limit) {
  const auto terms = lspec::prime_powers(lspec::Cutoff(limit));
  return lspec::make_term_table(terms, 0.0);
}

// range(0) = cutoff, range(1) = grid points, range(2) = threads
void BM_GridScan(benchmark::State& state) {
  const auto table = table_for(static_cast<std::uint64_t>(state.range(0)));
  const lspec::UniformGrid grid{10.0, 0.01, static_cast<std::size_t>(state.range(1))};
  const auto threads = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(table.scan(grid, threads));
  state.SetItemsProcessed(state.iterations() * state.range(1) * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_GridScan)
    ->Args({100'000, 5'000, 1})
    ->Args({1'000'000, 5'000, 1})
    ->Args({1'000'000, 5'000, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_PointEvaluate(benchmark::State& state) {
  const auto table = table_for(static_cast<std::uint64_t>(state.range(0)));
  double y = 14.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table.evaluate(y));
    y += 0.001;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_PointEvaluate)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

}  // namespace
