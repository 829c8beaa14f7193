#include <benchmark/benchmark.h>

#include "coinstop/duration.hpp"
#include "coinstop/pgf.hpp"

using namespace coinstop;

namespace {

const CoinSpec& third() {
  static const CoinSpec c = CoinSpec::with_heads_probability(Rational(Integer(1), Integer(3)));
  return c;
}

// state.range(0) = i, targets (100 i, 200 i); range(1) selects the rule.
void BM_Recurrence(benchmark::State& state) {
  const long i = state.range(0);
  const Rule rule = state.range(1) == 0 ? Rule::Or : Rule::And;
  for (auto _ : state) benchmark::DoNotOptimize(expectation_recurrence(third(), rule, 100 * i, 200 * i));
}

void BM_DirectSum(benchmark::State& state) {
  const long i = state.range(0);
  const Rule rule = state.range(1) == 0 ? Rule::Or : Rule::And;
  for (auto _ : state) benchmark::DoNotOptimize(expectation_direct(third(), rule, 100 * i, 200 * i));
}

void BM_PmfOr(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pmf_or(third(), n, n));
}

}  // namespace

BENCHMARK(BM_Recurrence)->ArgsProduct({{1, 4, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirectSum)->ArgsProduct({{1, 4, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PmfOr)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
