#include <benchmark/benchmark.h>

#include "coinstop/moments.hpp"

using namespace coinstop;

namespace {

void BM_MomentTable(benchmark::State& state) {
  const long n = state.range(0);
  const long order = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(moment_table(n, order));
}

void BM_FactorialMoments(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(factorial_moments_or_fair(n, 50));
}

}  // namespace

BENCHMARK(BM_MomentTable)->Args({1000, 10})->Args({16000, 10})->Args({1000, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactorialMoments)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);
