#include <benchmark/benchmark.h>

#include "randtest/exact_limits.hpp"
#include "randtest/oracle.hpp"

namespace {

void BM_UclExactConstantBudget(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::ucl_exact({n, 3, 0.1, 0.5}));
  }
}
BENCHMARK(BM_UclExactConstantBudget)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_UclExactLinearBudget(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::ucl_exact({n, n / 20, 0.1, 0.5}));
  }
}
BENCHMARK(BM_UclExactLinearBudget)->Arg(4000)->Arg(100000);

void BM_UclIidExact(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::ucl_iid_exact(n / 10, n, 0.1));
  }
}
BENCHMARK(BM_UclIidExact)->Arg(4000)->Arg(100000);

void BM_OracleLp(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(randtest::ucl_oracle_lp({n, 3, 0.1, 0.5}));
  }
}
BENCHMARK(BM_OracleLp)->Arg(40)->Arg(400);

}  // namespace
