#include <benchmark/benchmark.h>

#include "pihat/logint.hpp"

static void BM_LiFast(benchmark::State& state) {
  double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pihat::li_fast(x));
}
BENCHMARK(BM_LiFast)->Arg(1000)->Arg(1000000)->Arg(1000000000);

static void BM_LiDd(benchmark::State& state) {
  pihat::DD x(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pihat::li_dd(x));
}
BENCHMARK(BM_LiDd)->Arg(1000)->Arg(1000000)->Arg(1000000000);

static void BM_InverseLi(benchmark::State& state) {
  double y = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pihat::inverse_li(y));
}
BENCHMARK(BM_InverseLi)->Arg(1000)->Arg(1000000);
