#include <benchmark/benchmark.h>

#include "randtest/simulate.hpp"

namespace {

void BM_SimulateVertex(benchmark::State& state) {
  const randtest::TestDesign d{100, 0, 0.1, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        randtest::simulate_protocol(randtest::TruthSpec::vertex(10), d, 1000, 42));
  }
}
BENCHMARK(BM_SimulateVertex);

void BM_SimulateIid(benchmark::State& state) {
  const randtest::TestDesign d{1000, 80, 0.1, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        randtest::simulate_protocol(randtest::TruthSpec::iid(0.1), d, 100, 42));
  }
}
BENCHMARK(BM_SimulateIid);

}  // namespace
