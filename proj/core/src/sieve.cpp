#include "pihat/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace pihat {

namespace {

constexpr std::uint64_t kRangeCap = 10'000'000'000ull;  // 1e10

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Base primes shared by every slice; grown on demand under a lock.
const std::vector<std::uint64_t>& base_primes(std::uint64_t limit) {
  static std::vector<std::uint64_t> primes;
  static std::uint64_t covered = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (limit > covered) {
    std::uint64_t target = std::max<std::uint64_t>(limit + limit / 4, 1u << 16);
    primes.clear();
    std::vector<bool> comp(target + 1, false);
    for (std::uint64_t i = 2; i <= target; ++i) {
      if (comp[i]) continue;
      primes.push_back(i);
      for (std::uint64_t j = i * i; j <= target; j += i) comp[j] = true;
    }
    covered = target;
  }
  return primes;
}

}  // namespace

DyadicRange::DyadicRange(std::uint64_t n, std::uint64_t n1) : N(n), N1(n1) {
  if (n < 2 || n1 <= n || n1 > 2 * n)
    throw std::invalid_argument("DyadicRange: need 2 <= N < N1 <= 2N");
}

std::size_t ArithSlice::idx(std::uint64_t n) const {
  if (n < lo_ || n >= hi_) throw std::out_of_range("ArithSlice: index outside [lo, hi)");
  return static_cast<std::size_t>(n - lo_);
}

std::uint64_t ArithSlice::smallest_prime_factor(std::uint64_t n) const {
  std::uint32_t p = spf_[idx(n)];
  if (p != 0) return p;
  return n == 1 ? 0 : n;  // untouched by any base prime: n is prime
}

std::pair<std::uint64_t, int> ArithSlice::prime_power(std::uint64_t n) const {
  if (n < 2) return {0, 0};
  std::uint64_t p = smallest_prime_factor(n);
  int k = 0;
  std::uint64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1 ? std::make_pair(p, k) : std::make_pair(std::uint64_t{0}, 0);
}

std::vector<std::pair<std::uint64_t, int>> ArithSlice::factor(std::uint64_t n) const {
  if (lo_ != 1) throw std::logic_error("ArithSlice::factor requires a slice starting at 1");
  std::vector<std::pair<std::uint64_t, int>> out;
  while (n > 1) {
    std::uint64_t p = smallest_prime_factor(n);
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  return out;
}

ArithSlice::ArithSlice(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  std::size_t len = static_cast<std::size_t>(hi - lo);
  is_prime_.assign(len, false);
  mangoldt_.assign(len, 0.0);
  moebius_.assign(len, 1);
  spf_.assign(len, 0);

  // Working copy of each n with sieved prime factors divided out.
  std::vector<std::uint64_t> rem(len);
  for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;

  std::uint64_t root = isqrt_u64(hi - 1);
  for (std::uint64_t p : base_primes(root)) {
    if (p > root) break;
    std::uint64_t first = ((lo + p - 1) / p) * p;
    for (std::uint64_t n = first; n < hi; n += p) {
      std::size_t i = static_cast<std::size_t>(n - lo);
      if (spf_[i] == 0) spf_[i] = static_cast<std::uint32_t>(p);
      int mult = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        ++mult;
      }
      if (mult >= 2)
        moebius_[i] = 0;
      else
        moebius_[i] = static_cast<std::int8_t>(-moebius_[i]);
    }
    // Lambda lives only on prime powers p^k; mark them directly.
    double logp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q < hi; q *= p) {
      if (q >= lo) mangoldt_[static_cast<std::size_t>(q - lo)] = logp;
      if (q > hi / p) break;  // overflow guard
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t n = lo + i;
    if (n == 1) {
      moebius_[i] = 1;
      continue;
    }
    if (rem[i] > 1) {
      // One leftover prime factor > sqrt(hi-1), to the first power.
      if (moebius_[i] != 0) moebius_[i] = static_cast<std::int8_t>(-moebius_[i]);
      if (rem[i] == n) {
        is_prime_[i] = true;
        mangoldt_[i] = std::log(static_cast<double>(n));
      }
    } else if (spf_[i] == n) {
      is_prime_[i] = true;
    }
  }
}

ArithSlice sieve_slice(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
  if (lo < 1 || hi <= lo) throw std::invalid_argument("sieve_slice: need 1 <= lo < hi");
  if (hi > kRangeCap + 1) throw std::invalid_argument("sieve_slice: range cap is 1e10");
  if (hi - lo > budget) throw std::length_error("sieve_slice: segment budget exceeded");
  return {lo, hi};
}

double chebyshev_psi(std::uint64_t x) {
  if (x < 2 || x > 1'000'000'000ull)
    throw std::invalid_argument("chebyshev_psi: need 2 <= x <= 1e9");
  double sum = 0.0, comp = 0.0;
  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  for (std::uint64_t lo = 2; lo <= x; lo += seg) {
    std::uint64_t hi = std::min(x + 1, lo + seg);
    ArithSlice s = sieve_slice(lo, hi);
    for (std::uint64_t n = lo; n < hi; ++n) {
      double y = s.mangoldt(n) - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n < 2) return out;
  for (std::uint64_t p : base_primes(isqrt_u64(n))) {
    if (p * p > n) break;
    if (n % p) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, k] : factorize(n)) {
    std::size_t sz = out.size();
    std::uint64_t q = 1;
    for (int e = 1; e <= k; ++e) {
      q *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int moebius_of(std::uint64_t n) {
  if (n == 1) return 1;
  int sign = 1;
  for (auto [p, k] : factorize(n)) {
    if (k >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

double mangoldt_of(std::uint64_t n) {
  if (n < 2) return 0.0;
  auto f = factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

}  // namespace pihat
