#include <benchmark/benchmark.h>

#include "randtest/binomial.hpp"

namespace {

void BM_BinomCdfSmall(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::binom_cdf(40, 12, 0.7));
  }
}
BENCHMARK(BM_BinomCdfSmall);

void BM_LogBinomCdfLarge(benchmark::State& state) {
  const std::int64_t z = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::log_binom_cdf(z, z / 10, 0.7));
  }
}
BENCHMARK(BM_LogBinomCdfLarge)->Arg(10000)->Arg(1000000);

void BM_ZStarDeepTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::z_star_log(3, -700.0, 0.5));
  }
}
BENCHMARK(BM_ZStarDeepTail);

}  // namespace
