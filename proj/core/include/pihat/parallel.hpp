// Deterministic block-parallel reduction: work is cut into fixed-size blocks
// independent of the thread count, block partials are computed by a small
// worker pool, and the partials are folded in ascending block order. The
// result is therefore bitwise identical for any number of threads.
#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace pihat {

inline int default_thread_count() {
  if (const char* env = std::getenv("PIHAT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// per_block(block_index, begin, end) -> T over [begin, end); T needs
// operator+=. Items are indices in [0, n).
template <typename T, typename PerBlock>
T block_reduce(std::uint64_t n, int threads, PerBlock per_block,
               std::uint64_t block_size = 4096) {
  if (n == 0) return T{};
  std::uint64_t nblocks = (n + block_size - 1) / block_size;
  std::vector<T> partial(nblocks);
  if (threads <= 1 || nblocks == 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b)
      partial[b] = per_block(b, b * block_size, std::min(n, (b + 1) * block_size));
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::uint64_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        partial[b] = per_block(b, b * block_size, std::min(n, (b + 1) * block_size));
      }
    };
    std::vector<std::thread> pool;
    int nt = std::min<std::uint64_t>(threads, nblocks);
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  T total{};
  for (std::uint64_t b = 0; b < nblocks; ++b) total += partial[b];
  return total;
}

}  // namespace pihat
