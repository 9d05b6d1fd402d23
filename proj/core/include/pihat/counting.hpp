// The headline experiment: counting primes p <= x whose interval
// [Li(p), Li(p+1)) contains an integer, by the floor-indicator route and by
// direct enumeration of floor(iL(n)), plus the Sigma/Sigma1/Sigma2 reduction
// quantities over a dyadic range.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pihat/sieve.hpp"

namespace pihat {

struct CountRecord {
  std::uint64_t x = 0;
  std::uint64_t pi_hat = 0;
  double model = 0.0;  // x / log^2 x
  double ratio = 0.0;  // pi_hat / model
  std::uint64_t ambiguous_count = 0;
};

// Indicator route: segmented sieve over [2, x], one interval test per prime.
// Plain double Li with escalation inside the 1e-6 integer guard band.
CountRecord pi_hat(std::uint64_t x, int threads = 1);

// Enumeration route: walks n = 0, 1, 2, ... while iL(n) <= x, floors at
// escalated precision, intersects with the primes, and dedupes (p = 2 is
// reached from both n = 0 and n = 1). Throws std::runtime_error on an
// ambiguity flag. Oracle budget x <= 1e7.
std::uint64_t pi_hat_via_n(std::uint64_t x);

// One record per checkpoint from a single ascending sieve sweep.
std::vector<CountRecord> pi_hat_table(std::span<const std::uint64_t> checkpoints,
                                      int threads = 1);

struct SigmaReport {
  DyadicRange range;
  std::int64_t H = 1;
  double sigma = 0.0;                  // direct psi evaluation
  std::complex<double> sigma1 = 0.0;   // truncated-series main term
  double sigma2 = 0.0;                 // g-weight error mass
  double model = 0.0;                  // N / log^2 N
};

// Sigma = sum Lambda(n) [psi(Li(n)) - psi(Li(n+1))] over (N, N1], with its
// truncated main term and error mass at level H.
SigmaReport sigma_terms(DyadicRange range, std::int64_t H);

}  // namespace pihat
