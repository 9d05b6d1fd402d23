// Segmented sieve of Eratosthenes producing primality, von Mangoldt,
// Moebius, and smallest-prime-factor tables over an integer range.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pihat {

// An integer interval (N, N1] with N < N1 <= 2N, the unit all dyadic sums
// range over. Throws std::invalid_argument on construction if malformed.
struct DyadicRange {
  std::uint64_t N = 2;
  std::uint64_t N1 = 4;

  DyadicRange(std::uint64_t n, std::uint64_t n1);
  std::uint64_t count() const { return N1 - N; }
};

// Arithmetic tabulation over [lo, hi).
class ArithSlice {
 public:
  static constexpr std::uint64_t kDefaultSegmentBudget = 1ull << 22;

  ArithSlice(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  bool is_prime(std::uint64_t n) const { return is_prime_[idx(n)]; }
  double mangoldt(std::uint64_t n) const { return mangoldt_[idx(n)]; }
  int moebius(std::uint64_t n) const { return moebius_[idx(n)]; }

  // Smallest prime factor; n itself when n is prime, 0 for n = 1.
  std::uint64_t smallest_prime_factor(std::uint64_t n) const;

  // For prime powers n = p^k returns (p, k); (0, 0) otherwise. This is the
  // exact factored carrier of mangoldt(n) = k ? log p : 0.
  std::pair<std::uint64_t, int> prime_power(std::uint64_t n) const;

  // Factorization via the spf chain; requires lo() == 1 so cofactors stay
  // inside the slice.
  std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;

 private:
  std::size_t idx(std::uint64_t n) const;

  std::uint64_t lo_, hi_;
  std::vector<bool> is_prime_;
  std::vector<double> mangoldt_;
  std::vector<std::int8_t> moebius_;
  std::vector<std::uint32_t> spf_;  // 0 encodes "no factor <= sqrt": prime (or 1)
};

// Tabulates [lo, hi); hi - lo must stay within the segment budget.
// Throws std::invalid_argument on an inverted range, std::length_error when
// over budget.
ArithSlice sieve_slice(std::uint64_t lo, std::uint64_t hi,
                       std::uint64_t budget = ArithSlice::kDefaultSegmentBudget);

// sum_{n<=x} Lambda(n) over segmented slices with compensated summation.
double chebyshev_psi(std::uint64_t x);

// All primes <= n (simple flat sieve; n is expected to be modest).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Trial-division factorization for standalone use (n <= ~1e12).
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Pointwise Moebius / von Mangoldt via factorize; conveniences for tests
// and the coefficient routines.
int moebius_of(std::uint64_t n);
double mangoldt_of(std::uint64_t n);

}  // namespace pihat
