// Command dispatch behind the pihat binary: every experiment is driven by a
// RunConfig and emits RFC-4180-style CSV (header row, LF endings, floats at
// 17 significant digits) on the data stream; progress and errors go to the
// diagnostic stream only.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pihat {

struct RunConfig {
  std::string command;

  std::optional<std::uint64_t> x, N, N2, ell, u, v, k, L, K, Q, max_n, trials;
  std::optional<std::int64_t> h, q, H;
  std::vector<std::uint64_t> checkpoints;
  std::string alpha = "a";       // bilinear (L,2L] source: ones|a|b|lambda
  std::string beta = "lambda";   // bilinear (K,2K] source
  bool inverse = false;          // lival: evaluate the inverse instead

  int threads = 1;
  enum class Precision { kDouble, kDd };
  Precision precision = Precision::kDouble;
  std::uint64_t seed = 1;

  std::string out;      // CSV destination; empty = stdout
  std::string goldens;  // optional golden-store path
  bool regenerate = false;
};

// Exit codes: 0 success, 1 assertion/acceptance failure, 2 usage error.
int run(const RunConfig& config, std::ostream& data, std::ostream& diag);

// argv -> RunConfig -> run(); the entry point of tools/pihat.
int run_main(int argc, const char* const* argv);

}  // namespace pihat
