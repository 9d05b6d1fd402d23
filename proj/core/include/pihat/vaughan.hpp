// Vaughan's identity: the exact decomposition of Lambda(n) for n > v into
// divisor-convolution sums, its coefficients a(l) and b(r), the S1..S5
// split of the prime exponential sum, and the h-aggregated target sum S.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "pihat/dd.hpp"
#include "pihat/sieve.hpp"

namespace pihat {

// A quantity sum_p m_p log p held exactly by its integer coefficients.
class LogPrimeVector {
 public:
  void add_prime(std::uint64_t p, std::int64_t w);
  // + w * Lambda(n): no-op unless n is a prime power.
  void add_mangoldt(std::uint64_t n, std::int64_t w);
  // + w * log n = w * sum_{p^e || n} e log p, exact in the coefficient basis.
  void add_log(std::uint64_t n, std::int64_t w);
  LogPrimeVector& operator+=(const LogPrimeVector& o);
  LogPrimeVector& subtract(const LogPrimeVector& o);

  bool zero() const { return coeff_.empty(); }
  double value() const;  // sum m_p log p as a double
  const std::map<std::uint64_t, std::int64_t>& coefficients() const { return coeff_; }

 private:
  std::map<std::uint64_t, std::int64_t> coeff_;
};

struct VaughanParams {
  std::uint64_t u = 2;
  std::uint64_t v = 2;
  std::uint64_t N = 4;
  std::uint64_t N2 = 8;
  std::int64_t H = 1;

  // Paper regime: u = v = floor(N^{5/11}), N2 = 2N, H = ceil(log^4 N).
  static VaughanParams defaults(std::uint64_t N);
  void validate() const;  // v >= 1, v <= N, dyadic (N, N2], H >= 0
};

std::uint64_t floor_pow_5_11(std::uint64_t N);
std::int64_t default_truncation(std::uint64_t N);  // ceil(log^4 N)

// a(l) = sum_{d | l, d > u} mu(d); |a(l)| <= d(l) is checked.
std::int64_t coeff_a(std::uint64_t ell, std::uint64_t u);

// b(r) = sum_{l m = r, l <= v, m <= u} Lambda(l) mu(m), exact;
// |value| <= log r is checked numerically.
LogPrimeVector coeff_b(std::uint64_t r, std::uint64_t u, std::uint64_t v);

// Assembles the right-hand side of the identity for Lambda(n), n > v, in
// exact log-prime arithmetic and returns RHS - Lambda(n); a correct
// implementation returns the zero vector for every n.
LogPrimeVector vaughan_identity_check(std::uint64_t n, std::uint64_t u, std::uint64_t v);

// Prime-power support of (N, N1] with Lambda weights and dd Li values,
// shared across the h loop of s_total.
struct PreparedRange {
  DyadicRange range;
  std::vector<std::uint64_t> n;
  std::vector<double> lambda;
  std::vector<DD> li;
};

PreparedRange prepare_prime_powers(DyadicRange range);

// sum_{N<n<=N1} Lambda(n) e(h Li(n))
std::complex<double> prime_exp_sum(std::int64_t h, const PreparedRange& prep);
std::complex<double> prime_exp_sum(std::int64_t h, DyadicRange range);

struct Decomposition {
  std::complex<double> S1, S2, S3, S4, S5, total;
};

// S1 (k>v, l>u bilinear piece), S2 (l<=u, mu(l) log k), S3 = S4 + S5
// (b(r) pieces over r<=u and u<r<=uv); total = S1 + S2 - S3, which equals
// prime_exp_sum over (N, N2] by the identity.
Decomposition decompose_sum(std::int64_t h, const VaughanParams& params);

struct STotalResult {
  double S = 0.0;           // sum_{0<h<=H} |prime_exp_sum(h)|
  double power_ratio = 0.0; // S / N^{21/22}
  double log_target = 0.0;  // S log N / N
};

STotalResult s_total(const VaughanParams& params, int threads = 1);

// Coefficient windows used by the Type II acceptance grid and the norm
// hypothesis checks: a(l) on (L,2L], Lambda on (K,2K], b(r) on (R,2R].
std::vector<std::complex<double>> coeff_a_window(std::uint64_t L, std::uint64_t u);
std::vector<std::complex<double>> mangoldt_window(std::uint64_t K);
std::vector<std::complex<double>> coeff_b_window(std::uint64_t R, std::uint64_t u, std::uint64_t v);

}  // namespace pihat
