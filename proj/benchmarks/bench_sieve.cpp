#include <benchmark/benchmark.h>

#include <cstdint>

#include "lspec/prime_stream.hpp"

namespace {

void BM_SievePrimes(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lspec::sieve_primes(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_PrimePowers(benchmark::State& state) {
  const lspec::Cutoff cutoff(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lspec::prime_powers(cutoff));
}
BENCHMARK(BM_PrimePowers)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_PrimePowersFiltered(benchmark::State& state) {
  const lspec::Cutoff cutoff(1'000'000);
  const lspec::ResidueFilter filter(4, {1});
  for (auto _ : state) benchmark::DoNotOptimize(lspec::prime_powers(cutoff, filter));
}
BENCHMARK(BM_PrimePowersFiltered)->Unit(benchmark::kMillisecond);

}  // namespace
