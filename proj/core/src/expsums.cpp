#include "pihat/expsums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pihat/logint.hpp"
#include "pihat/parallel.hpp"

namespace pihat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void assert_triangle(double mag, double cap, const char* what) {
  if (mag > cap * (1.0 + 1e-9) + 1e-9)
    throw std::logic_error(std::string(what) + ": |sum| exceeded the term-count bound");
}

}  // namespace

std::complex<double> unit_exp(DD x) {
  double f = dd_frac(x).to_double();
  return std::polar(1.0, kTwoPi * f);
}

BoundReport BoundReport::make(double lhs, double bound, SumParams params) {
  return {lhs, bound, lhs / bound, params};
}

std::complex<double> linear_sum(std::int64_t h, std::uint64_t ell, DyadicRange range, int threads) {
  if (ell < 1) throw std::invalid_argument("linear_sum: ell must be >= 1");
  if (std::llabs(h) > 1'000'000) throw std::invalid_argument("linear_sum: |h| cap is 1e6");
  const std::uint64_t count = range.count();
  if (h == 0) return {static_cast<double>(count), 0.0};
  double top = static_cast<double>(ell) * static_cast<double>(range.N1);
  if (top > 1e10) throw std::overflow_error("linear_sum: ell*N1 above the 1e10 argument cap");

  double hd = static_cast<double>(h);
  auto per_block = [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    std::complex<double> s = 0.0;
    for (std::uint64_t i = b; i < e; ++i) {
      std::uint64_t n = range.N + 1 + i;
      s += unit_exp(li_dd(DD(static_cast<double>(n * ell))) * hd);
    }
    return s;
  };
  std::complex<double> s = block_reduce<std::complex<double>>(count, threads, per_block);
  assert_triangle(std::abs(s), static_cast<double>(count), "linear_sum");
  return s;
}

BoundReport linear_bound_report(std::int64_t h, std::uint64_t ell, DyadicRange range, int threads) {
  if (h == 0) throw std::invalid_argument("linear_bound_report: h must be nonzero");
  double lhs = std::abs(linear_sum(h, ell, range, threads));
  double N = static_cast<double>(range.N);
  double bound = std::sqrt(N * std::llabs(h) * ell) * std::log(N * ell);
  SumParams p;
  p.h = h;
  p.ell = ell;
  p.N = range.N;
  p.N1 = range.N1;
  return BoundReport::make(lhs, bound, p);
}

S0Result s0_sum(std::int64_t h, std::int64_t q, std::uint64_t k, std::uint64_t L) {
  if (h < 1) throw std::invalid_argument("s0_sum: h must be positive");
  if (q == 0) throw std::invalid_argument("s0_sum: q must be nonzero");
  if (k < 1 || L < 1) throw std::invalid_argument("s0_sum: k, L must be positive");
  std::int64_t kq = static_cast<std::int64_t>(k) + q;
  if (kq < 1) throw std::invalid_argument("s0_sum: k + q must stay positive");
  double top = static_cast<double>(2 * L) * static_cast<double>(std::max<std::int64_t>(k, kq));
  if (top > 1e10) throw std::overflow_error("s0_sum: argument above the 1e10 cap");

  double hd = static_cast<double>(h);
  std::complex<double> s = 0.0;
  for (std::uint64_t ell = L + 1; ell <= 2 * L; ++ell) {
    DD d = li_dd(DD(static_cast<double>(ell * k))) -
           li_dd(DD(static_cast<double>(ell) * static_cast<double>(kq)));
    s += unit_exp(d * hd);
  }
  assert_triangle(std::abs(s), static_cast<double>(L), "s0_sum");

  SumParams p;
  p.h = h;
  p.q = q;
  p.k = k;
  p.L = L;
  double bound = std::sqrt(static_cast<double>(L) * hd * std::llabs(q));
  return {s, BoundReport::make(std::abs(s), bound, p)};
}

WvdcResult wvdc_check(std::span<const std::complex<double>> z, std::uint64_t Q) {
  const std::uint64_t K = z.size();
  if (K == 0 || Q < 1 || Q > K) throw std::invalid_argument("wvdc_check: need 1 <= Q <= K");

  std::complex<double> total = 0.0;
  for (auto v : z) total += v;
  double lhs = std::norm(total);

  std::complex<double> rhs = 0.0;
  for (std::int64_t q = -static_cast<std::int64_t>(Q) + 1; q < static_cast<std::int64_t>(Q); ++q) {
    double w = 1.0 - static_cast<double>(std::llabs(q)) / static_cast<double>(Q);
    std::complex<double> inner = 0.0;
    for (std::uint64_t j = 0; j < K; ++j) {
      std::int64_t jq = static_cast<std::int64_t>(j) + q;
      if (jq < 0 || jq >= static_cast<std::int64_t>(K)) continue;
      inner += z[j] * std::conj(z[static_cast<std::uint64_t>(jq)]);
    }
    rhs += w * inner;
  }
  rhs *= static_cast<double>(K + Q) / static_cast<double>(Q);
  if (std::abs(rhs.imag()) > 1e-9 * (std::abs(rhs.real()) + 1.0))
    throw std::logic_error("wvdc_check: rhs imaginary part failed to cancel");
  return {lhs, rhs.real()};
}

CoefficientPair::CoefficientPair(std::uint64_t L, std::vector<std::complex<double>> alpha, double A,
                                 std::uint64_t K, std::vector<std::complex<double>> beta, double B)
    : L_(L), K_(K), A_(A), B_(B), alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() != L_ || beta_.size() != K_)
    throw std::invalid_argument("CoefficientPair: support sizes must equal L and K");
  auto sq_norm = [](const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (auto x : v) s += std::norm(x);
    return s;
  };
  double logL = std::log(static_cast<double>(L_));
  double logK = std::log(static_cast<double>(K_));
  c_alpha_ = sq_norm(alpha_) / (static_cast<double>(L_) * std::pow(logL, 2.0 * A_));
  c_beta_ = sq_norm(beta_) / (static_cast<double>(K_) * std::pow(logK, 2.0 * B_));
}

double CoefficientPair::abs_mass() const {
  double sa = 0.0, sb = 0.0;
  for (auto x : alpha_) sa += std::abs(x);
  for (auto x : beta_) sb += std::abs(x);
  return sa * sb;
}

BilinearResult bilinear_sum(const CoefficientPair& pair, std::int64_t h, int threads) {
  if (h < 1) throw std::invalid_argument("bilinear_sum: h must be positive");
  const std::uint64_t L = pair.L(), K = pair.K();
  if (static_cast<double>(L) * static_cast<double>(K) > 1e8)
    throw std::length_error("bilinear_sum: K*L above the direct-evaluation budget");
  if (static_cast<double>(2 * L) * static_cast<double>(2 * K) > 1e10)
    throw std::overflow_error("bilinear_sum: argument above the 1e10 cap");

  double hd = static_cast<double>(h);
  auto per_block = [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    std::complex<double> s = 0.0;
    for (std::uint64_t i = b; i < e; ++i) {
      std::uint64_t ell = L + 1 + i;
      std::complex<double> row = 0.0;
      for (std::uint64_t k = K + 1; k <= 2 * K; ++k)
        row += pair.beta(k) * unit_exp(li_dd(DD(static_cast<double>(ell * k))) * hd);
      s += pair.alpha(ell) * row;
    }
    return s;
  };
  // one block per ell row keeps the reduction order fixed
  std::complex<double> s = block_reduce<std::complex<double>>(L, threads, per_block, 1);
  assert_triangle(std::abs(s), pair.abs_mass(), "bilinear_sum");

  double logL = std::log(static_cast<double>(L));
  double logK = std::log(static_cast<double>(K));
  double bound = static_cast<double>(K) * std::pow(static_cast<double>(L), 5.0 / 6.0) *
                 std::pow(hd, 1.0 / 6.0) * std::pow(logL, pair.A()) * std::pow(logK, pair.B());
  SumParams p;
  p.h = h;
  p.L = L;
  p.K = K;
  return {s, BoundReport::make(std::abs(s), bound, p)};
}

}  // namespace pihat
