#include "pihat/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pihat/expsums.hpp"
#include "pihat/logint.hpp"
#include "pihat/parallel.hpp"
#include "pihat/sawtooth.hpp"

namespace pihat {

namespace {

constexpr double kGuardBand = 1e-6;

struct CeilResult {
  std::int64_t value;
  bool ambiguous;
};

// ceil(Li(arg)) decided by the double path unless the value sits within the
// integer guard band, in which case the double-double path settles it; a
// residual straddle at dd precision is flagged ambiguous.
CeilResult li_ceil_guarded(std::uint64_t arg) {
  double fast = li_fast(static_cast<double>(arg));
  double dist = std::abs(fast - std::nearbyint(fast));
  if (dist >= kGuardBand) return {static_cast<std::int64_t>(std::ceil(fast)), false};

  DD v = li_dd(DD(static_cast<double>(arg)));
  double err = (arg == 2) ? 0.0 : 1e-26 * (std::abs(v.hi) + 1.0);
  DD fr = dd_frac(v);
  double d0 = fr.to_double();
  double dd_dist = std::min(d0, 1.0 - d0);
  DD cl = -dd_floor(-v);
  return {static_cast<std::int64_t>(cl.to_double()), dd_dist < err};
}

// 1 when [Li(p), Li(p+1)) contains an integer.
struct Indicator {
  int hit;
  bool ambiguous;
};

Indicator interval_indicator(std::uint64_t p) {
  CeilResult a = li_ceil_guarded(p);
  CeilResult b = li_ceil_guarded(p + 1);
  std::int64_t count = b.value - a.value;
  return {count >= 1 ? 1 : 0, a.ambiguous || b.ambiguous};
}

struct CountPartial {
  std::uint64_t hits = 0;
  std::uint64_t ambiguous = 0;
  CountPartial& operator+=(const CountPartial& o) {
    hits += o.hits;
    ambiguous += o.ambiguous;
    return *this;
  }
};

CountPartial count_over(std::span<const std::uint64_t> primes, int threads) {
  auto per_block = [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    CountPartial part;
    for (std::uint64_t i = b; i < e; ++i) {
      Indicator ind = interval_indicator(primes[i]);
      part.hits += ind.hit;
      part.ambiguous += ind.ambiguous ? 1 : 0;
    }
    return part;
  };
  return block_reduce<CountPartial>(primes.size(), threads, per_block, 1024);
}

CountRecord make_record(std::uint64_t x, std::uint64_t hits, std::uint64_t ambiguous) {
  double lx = std::log(static_cast<double>(x));
  CountRecord r;
  r.x = x;
  r.pi_hat = hits;
  r.model = static_cast<double>(x) / (lx * lx);
  r.ratio = static_cast<double>(hits) / r.model;
  r.ambiguous_count = ambiguous;
  return r;
}

}  // namespace

std::vector<CountRecord> pi_hat_table(std::span<const std::uint64_t> checkpoints, int threads) {
  std::vector<CountRecord> out;
  if (checkpoints.empty()) return out;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 2) throw std::invalid_argument("pi_hat_table: checkpoints start at 2");
    if (i && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("pi_hat_table: checkpoints must ascend");
  }
  std::uint64_t x_max = checkpoints.back();
  if (x_max > 1'000'000'000ull) throw std::length_error("pi_hat_table: budget cap is x <= 1e9");

  std::uint64_t hits = 0, ambiguous = 0;
  std::size_t ci = 0;
  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t lo = 2; lo <= x_max; lo += seg) {
    std::uint64_t hi = std::min(x_max + 1, lo + seg);
    ArithSlice s = sieve_slice(lo, hi);
    primes.clear();
    for (std::uint64_t n = lo; n < hi; ++n)
      if (s.is_prime(n)) primes.push_back(n);

    std::size_t start = 0;
    while (ci < checkpoints.size() && checkpoints[ci] < hi) {
      auto end = std::upper_bound(primes.begin() + start, primes.end(), checkpoints[ci]) -
                 primes.begin();
      CountPartial part = count_over(
          std::span<const std::uint64_t>(primes.data() + start, end - start), threads);
      hits += part.hits;
      ambiguous += part.ambiguous;
      out.push_back(make_record(checkpoints[ci], hits, ambiguous));
      start = end;
      ++ci;
    }
    CountPartial part = count_over(
        std::span<const std::uint64_t>(primes.data() + start, primes.size() - start), threads);
    hits += part.hits;
    ambiguous += part.ambiguous;
  }
  return out;
}

CountRecord pi_hat(std::uint64_t x, int threads) {
  std::uint64_t cp[1] = {x};
  return pi_hat_table(cp, threads)[0];
}

std::uint64_t pi_hat_via_n(std::uint64_t x) {
  if (x < 2) return 0;
  if (x > 10'000'000ull) throw std::length_error("pi_hat_via_n: oracle budget is x <= 1e7");

  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  std::uint64_t win_lo = 2;
  ArithSlice window = sieve_slice(win_lo, std::min(x + 1, win_lo + seg));

  std::uint64_t count = 0, last_p = 0;
  for (std::uint64_t n = 0;; ++n) {
    FloorInverseLi f = floor_inverse_li(n);
    if (f.ambiguous)
      throw std::runtime_error("pi_hat_via_n: ambiguous floor at n=" + std::to_string(n));
    if (f.value > x) break;
    if (f.value == last_p) continue;  // interval [Li(p), Li(p+1)) held two integers
    last_p = f.value;
    while (f.value >= window.hi()) {
      win_lo = window.hi();
      window = sieve_slice(win_lo, std::min(x + 1, win_lo + seg));
    }
    if (window.is_prime(f.value)) ++count;
  }
  return count;
}

SigmaReport sigma_terms(DyadicRange range, std::int64_t H) {
  if (H < 1) throw std::invalid_argument("sigma_terms: H must be >= 1");
  if (2 * range.N > 10'000'000ull)
    throw std::length_error("sigma_terms: budget cap is 2N <= 1e7");

  SigmaReport rep{range, H, 0.0, 0.0, 0.0, 0.0};
  double lN = std::log(static_cast<double>(range.N));
  rep.model = static_cast<double>(range.N) / (lN * lN);

  FourierTruncation tr(static_cast<int>(H));

  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  for (std::uint64_t lo = range.N + 1; lo <= range.N1; lo += seg) {
    std::uint64_t hi = std::min(range.N1 + 1, lo + seg);
    ArithSlice s = sieve_slice(lo, hi);
    for (std::uint64_t n = lo; n < hi; ++n) {
      double lam = s.mangoldt(n);
      if (lam == 0.0) continue;
      DD a = li_dd(DD(static_cast<double>(n)));
      DD b = li_dd(DD(static_cast<double>(n + 1)));
      double fa = dd_frac(a).to_double();
      double fb = dd_frac(b).to_double();
      rep.sigma += lam * ((fa - 0.5) - (fb - 0.5));

      std::complex<double> inner = 0.0;
      for (std::int64_t h = 1; h <= H; ++h) {
        double hd = static_cast<double>(h);
        std::complex<double> da = unit_exp(a * hd) - unit_exp(b * hd);
        std::complex<double> db = unit_exp(a * -hd) - unit_exp(b * -hd);
        inner += tr.c(static_cast<int>(h)) * da + tr.c(static_cast<int>(-h)) * db;
      }
      rep.sigma1 += lam * inner;

      auto gw = [H](double frac_dist) {
        double d = std::min(frac_dist, 1.0 - frac_dist);
        if (d == 0.0) return 1.0;
        return std::min(1.0, 1.0 / (static_cast<double>(H) * d));
      };
      rep.sigma2 += lam * (gw(fa) + gw(fb));
    }
  }
  return rep;
}

}  // namespace pihat
