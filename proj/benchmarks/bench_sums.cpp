#include <benchmark/benchmark.h>

#include "pihat/expsums.hpp"
#include "pihat/vaughan.hpp"

static void BM_LinearSum(benchmark::State& state) {
  pihat::DyadicRange range(1 << 12, 1 << 13);
  for (auto _ : state) benchmark::DoNotOptimize(pihat::linear_sum(3, 2, range));
  state.SetItemsProcessed(state.iterations() * range.count());
}
BENCHMARK(BM_LinearSum);

static void BM_PrimeExpSumPrepared(benchmark::State& state) {
  auto prep = pihat::prepare_prime_powers(pihat::DyadicRange(1 << 14, 1 << 15));
  std::int64_t h = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pihat::prime_exp_sum(h, prep));
    ++h;
  }
  state.SetItemsProcessed(state.iterations() * prep.n.size());
}
BENCHMARK(BM_PrimeExpSumPrepared);

BENCHMARK_MAIN();
