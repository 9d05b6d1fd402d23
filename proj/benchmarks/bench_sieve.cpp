#include <benchmark/benchmark.h>

#include "pihat/sieve.hpp"

static void BM_SieveSlice(benchmark::State& state) {
  std::uint64_t len = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t lo = 1'000'000'000ull;
  for (auto _ : state) benchmark::DoNotOptimize(pihat::sieve_slice(lo, lo + len));
  state.SetItemsProcessed(state.iterations() * len);
}
BENCHMARK(BM_SieveSlice)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 22);
