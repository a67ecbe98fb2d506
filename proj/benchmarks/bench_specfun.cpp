#include <benchmark/benchmark.h>

#include <complex>

#include "lspec/specfun.hpp"

namespace {

void BM_DigammaComplex(benchmark::State& state) {
  const double im = static_cast<double>(state.range(0));
  std::complex<double> s(0.25, im);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lspec::digamma(s));
    s += std::complex<double>(0.0, 1e-3);
  }
}
BENCHMARK(BM_DigammaComplex)->Arg(0)->Arg(10)->Arg(1'000'000);

void BM_DigammaReal(benchmark::State& state) {
  double s = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lspec::digamma(s));
    s += 1e-6;
  }
}
BENCHMARK(BM_DigammaReal);

}  // namespace
