#include "pihat/vaughan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pihat/expsums.hpp"
#include "pihat/logint.hpp"
#include "pihat/parallel.hpp"

namespace pihat {

namespace {

// Lambda over [1, hi) as a flat table, segment by segment.
std::vector<double> mangoldt_table(std::uint64_t hi) {
  std::vector<double> out(hi, 0.0);
  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  for (std::uint64_t lo = 1; lo < hi; lo += seg) {
    std::uint64_t top = std::min(hi, lo + seg);
    ArithSlice s = sieve_slice(lo, top);
    for (std::uint64_t n = lo; n < top; ++n) out[n] = s.mangoldt(n);
  }
  return out;
}

// Li values for every integer in (N, N2], indexed by n - N - 1.
std::vector<DD> li_table(std::uint64_t N, std::uint64_t N2) {
  std::vector<DD> out(N2 - N);
  for (std::uint64_t n = N + 1; n <= N2; ++n)
    out[n - N - 1] = li_dd(DD(static_cast<double>(n)));
  return out;
}

}  // namespace

void LogPrimeVector::add_prime(std::uint64_t p, std::int64_t w) {
  if (w == 0) return;
  auto it = coeff_.find(p);
  if (it == coeff_.end()) {
    coeff_.emplace(p, w);
  } else if ((it->second += w) == 0) {
    coeff_.erase(it);
  }
}

void LogPrimeVector::add_mangoldt(std::uint64_t n, std::int64_t w) {
  auto f = factorize(n);
  if (f.size() == 1) add_prime(f[0].first, w);
}

void LogPrimeVector::add_log(std::uint64_t n, std::int64_t w) {
  for (auto [p, e] : factorize(n)) add_prime(p, w * e);
}

LogPrimeVector& LogPrimeVector::operator+=(const LogPrimeVector& o) {
  for (auto [p, w] : o.coeff_) add_prime(p, w);
  return *this;
}

LogPrimeVector& LogPrimeVector::subtract(const LogPrimeVector& o) {
  for (auto [p, w] : o.coeff_) add_prime(p, -w);
  return *this;
}

double LogPrimeVector::value() const {
  double s = 0.0;
  for (auto [p, w] : coeff_) s += static_cast<double>(w) * std::log(static_cast<double>(p));
  return s;
}

std::uint64_t floor_pow_5_11(std::uint64_t N) {
  // largest u with u^11 <= N^5, settled by comparing logs with a hair of slack
  auto fits = [N](std::uint64_t u) {
    return 11.0L * std::log(static_cast<long double>(u)) <=
           5.0L * std::log(static_cast<long double>(N)) + 1e-12L;
  };
  auto u = static_cast<std::uint64_t>(
      std::floor(std::exp(5.0L / 11.0L * std::log(static_cast<long double>(N)))));
  while (u > 1 && !fits(u)) --u;
  while (fits(u + 1)) ++u;
  return u;
}

std::int64_t default_truncation(std::uint64_t N) {
  long double l = std::log(static_cast<long double>(N));
  return static_cast<std::int64_t>(std::ceil(l * l * l * l));
}

VaughanParams VaughanParams::defaults(std::uint64_t N) {
  VaughanParams p;
  p.N = N;
  p.N2 = 2 * N;
  p.u = p.v = std::max<std::uint64_t>(2, floor_pow_5_11(N));
  p.H = default_truncation(N);
  p.validate();
  return p;
}

void VaughanParams::validate() const {
  DyadicRange check(N, N2);  // throws if malformed
  if (v < 1 || v > N) throw std::invalid_argument("VaughanParams: need 1 <= v <= N");
  if (H < 0) throw std::invalid_argument("VaughanParams: H must be >= 0");
}

std::int64_t coeff_a(std::uint64_t ell, std::uint64_t u) {
  if (ell < 2) throw std::invalid_argument("coeff_a: ell must exceed 1");
  if (ell > 100'000'000ull) throw std::invalid_argument("coeff_a: ell cap is 1e8");
  std::int64_t a = 0;
  std::int64_t dcount = 0;
  for (std::uint64_t d : divisors(ell)) {
    ++dcount;
    if (d > u) a += moebius_of(d);
  }
  if (std::llabs(a) > dcount) throw std::logic_error("coeff_a: |a| exceeded the divisor count");
  return a;
}

LogPrimeVector coeff_b(std::uint64_t r, std::uint64_t u, std::uint64_t v) {
  LogPrimeVector b;
  if (r < 1 || u == 0 || v == 0) return b;
  if (r > u * v) throw std::invalid_argument("coeff_b: r must be <= u*v");
  for (std::uint64_t ell : divisors(r)) {
    if (ell > v) continue;
    std::uint64_t m = r / ell;
    if (m > u) continue;
    auto f = factorize(ell);
    if (f.size() != 1) continue;  // Lambda(ell) = 0
    b.add_prime(f[0].first, moebius_of(m));
  }
  double val = std::abs(b.value());
  if (val > std::log(static_cast<double>(std::max<std::uint64_t>(r, 2))) + 1e-9)
    throw std::logic_error("coeff_b: |b(r)| exceeded log r");
  return b;
}

namespace {

LogPrimeVector vaughan_rhs_minus_lambda(std::uint64_t n, std::uint64_t u, std::uint64_t v) {
  LogPrimeVector acc;
  // A: sum over k l = n, k > v, l > u of Lambda(k) a(l)
  for (std::uint64_t ell : divisors(n)) {
    std::uint64_t k = n / ell;
    if (k <= v || ell <= u || ell < 2) continue;
    auto f = factorize(k);
    if (f.size() != 1) continue;
    acc.add_prime(f[0].first, coeff_a(ell, u));
  }
  // B: sum over k l = n, l <= u of mu(l) log k
  for (std::uint64_t ell : divisors(n)) {
    if (ell > u) continue;
    int mu = moebius_of(ell);
    if (mu != 0) acc.add_log(n / ell, mu);
  }
  // C: sum over k l m = n, l <= v, m <= u of Lambda(l) mu(m), grouped by r = l m
  for (std::uint64_t r : divisors(n)) {
    if (r > u * v) continue;
    acc.subtract(coeff_b(r, u, v));
  }
  acc.add_mangoldt(n, -1);
  return acc;
}

}  // namespace

LogPrimeVector vaughan_identity_check(std::uint64_t n, std::uint64_t u, std::uint64_t v) {
  if (u < 1 || v < 1) throw std::invalid_argument("vaughan_identity_check: requires u, v >= 1");
  if (n <= v) throw std::invalid_argument("vaughan_identity_check: requires n > v");
  return vaughan_rhs_minus_lambda(n, u, v);
}

PreparedRange prepare_prime_powers(DyadicRange range) {
  PreparedRange prep{range, {}, {}, {}};
  std::uint64_t seg = ArithSlice::kDefaultSegmentBudget;
  for (std::uint64_t lo = range.N + 1; lo <= range.N1; lo += seg) {
    std::uint64_t hi = std::min(range.N1 + 1, lo + seg);
    ArithSlice s = sieve_slice(lo, hi);
    for (std::uint64_t n = lo; n < hi; ++n) {
      double lam = s.mangoldt(n);
      if (lam == 0.0) continue;
      prep.n.push_back(n);
      prep.lambda.push_back(lam);
      prep.li.push_back(li_dd(DD(static_cast<double>(n))));
    }
  }
  return prep;
}

std::complex<double> prime_exp_sum(std::int64_t h, const PreparedRange& prep) {
  double hd = static_cast<double>(h);
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < prep.n.size(); ++i)
    s += prep.lambda[i] * unit_exp(prep.li[i] * hd);
  return s;
}

std::complex<double> prime_exp_sum(std::int64_t h, DyadicRange range) {
  if (range.N1 > 100'000'000ull)
    throw std::length_error("prime_exp_sum: direct-mode cap is N1 <= 1e8");
  return prime_exp_sum(h, prepare_prime_powers(range));
}

Decomposition decompose_sum(std::int64_t h, const VaughanParams& params) {
  params.validate();
  if (h < 1) throw std::invalid_argument("decompose_sum: h must be positive");
  const std::uint64_t N = params.N, N2 = params.N2, u = params.u, v = params.v;
  if (N > 10'000'000ull) throw std::length_error("decompose_sum: direct-mode cap is N <= 1e7");

  const double hd = static_cast<double>(h);
  const std::vector<DD> li = li_table(N, N2);
  auto phase = [&](std::uint64_t arg) { return unit_exp(li[arg - N - 1] * hd); };

  Decomposition d{};

  // S1: sum_{l>u} a(l) sum_{k>v, N<kl<=N2} Lambda(k) e(h Li(kl))
  std::vector<double> lambda = mangoldt_table(N2 / (u + 1) + 1);
  auto a_of = [u](std::uint64_t ell) {
    if (ell == 1) return static_cast<std::int64_t>(u == 0 ? 1 : 0);  // mu(1) when u = 0
    return coeff_a(ell, u);
  };
  for (std::uint64_t ell = u + 1; ell * (v + 1) <= N2; ++ell) {
    std::int64_t a = a_of(ell);
    if (a == 0) continue;
    std::uint64_t k_lo = std::max(v + 1, N / ell + 1);
    std::uint64_t k_hi = N2 / ell;
    std::complex<double> inner = 0.0;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      if (lambda[k] == 0.0) continue;
      inner += lambda[k] * phase(k * ell);
    }
    d.S1 += static_cast<double>(a) * inner;
  }

  // S2: sum_{l<=u} mu(l) sum_{N<kl<=N2} log k e(h Li(kl))
  for (std::uint64_t ell = 1; ell <= u; ++ell) {
    int mu = moebius_of(ell);
    if (mu == 0) continue;
    std::uint64_t k_lo = N / ell + 1;
    std::uint64_t k_hi = N2 / ell;
    std::complex<double> inner = 0.0;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k)
      inner += std::log(static_cast<double>(k)) * phase(k * ell);
    d.S2 += static_cast<double>(mu) * inner;
  }

  // S3 = S4 + S5: sum_{r<=uv} b(r) sum_{N<kr<=N2} e(h Li(kr))
  for (std::uint64_t r = 1; r <= u * v && r <= N2; ++r) {
    double b = coeff_b(r, u, v).value();
    if (b == 0.0) continue;
    std::uint64_t k_lo = N / r + 1;
    std::uint64_t k_hi = N2 / r;
    if (k_lo > k_hi) continue;
    std::complex<double> inner = 0.0;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) inner += phase(k * r);
    (r <= u ? d.S4 : d.S5) += b * inner;
  }
  d.S3 = d.S4 + d.S5;
  d.total = d.S1 + d.S2 - d.S3;
  return d;
}

STotalResult s_total(const VaughanParams& params, int threads) {
  params.validate();
  PreparedRange prep = prepare_prime_powers(DyadicRange(params.N, params.N2));

  struct Acc {
    double s = 0.0;
    Acc& operator+=(const Acc& o) {
      s += o.s;
      return *this;
    }
  };
  auto per_block = [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    Acc a;
    for (std::uint64_t i = b; i < e; ++i)
      a.s += std::abs(prime_exp_sum(static_cast<std::int64_t>(i + 1), prep));
    return a;
  };
  std::uint64_t hcount = params.H < 0 ? 0 : static_cast<std::uint64_t>(params.H);
  double S = block_reduce<Acc>(hcount, threads, per_block, 16).s;

  double Nd = static_cast<double>(params.N);
  STotalResult r;
  r.S = S;
  r.power_ratio = S / std::pow(Nd, 21.0 / 22.0);
  r.log_target = S * std::log(Nd) / Nd;
  return r;
}

std::vector<std::complex<double>> coeff_a_window(std::uint64_t L, std::uint64_t u) {
  std::vector<std::complex<double>> out(L);
  for (std::uint64_t ell = L + 1; ell <= 2 * L; ++ell)
    out[ell - L - 1] = static_cast<double>(coeff_a(ell, u));
  return out;
}

std::vector<std::complex<double>> mangoldt_window(std::uint64_t K) {
  std::vector<std::complex<double>> out(K);
  ArithSlice s = sieve_slice(K + 1, 2 * K + 1);
  for (std::uint64_t k = K + 1; k <= 2 * K; ++k) out[k - K - 1] = s.mangoldt(k);
  return out;
}

std::vector<std::complex<double>> coeff_b_window(std::uint64_t R, std::uint64_t u, std::uint64_t v) {
  std::vector<std::complex<double>> out(R);
  for (std::uint64_t r = R + 1; r <= 2 * R; ++r)
    out[r - R - 1] = (r <= u * v) ? coeff_b(r, u, v).value() : 0.0;
  return out;
}

}  // namespace pihat
