// Direct evaluators for the linear (Type I), differenced (S0), and bilinear
// (Type II) exponential sums over Li phases, with empirical bound reports.
//
// Every phase e(h Li(m)) is computed from the double-double fractional part
// of h*Li(m): the integer part is discarded at extended precision before any
// trigonometry, so phase accuracy is absolute rather than relative.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pihat/dd.hpp"
#include "pihat/sieve.hpp"

namespace pihat {

// e(x) = exp(2 pi i x) for a dd argument, reduced mod 1 at dd precision.
std::complex<double> unit_exp(DD x);

// Parameters echoed into reports; only the fields a given sum uses are set.
struct SumParams {
  std::int64_t h = 0;
  std::uint64_t ell = 0, N = 0, N1 = 0, k = 0, L = 0, K = 0, Q = 0;
  std::int64_t q = 0;
};

// (|computed sum|, bound without implied constant, their ratio).
struct BoundReport {
  double lhs = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  SumParams params;

  static BoundReport make(double lhs, double bound, SumParams params);
};

// sum_{N<n<=N1} e(h Li(n ell)); h = 0 short-circuits to N1 - N.
std::complex<double> linear_sum(std::int64_t h, std::uint64_t ell, DyadicRange range,
                                int threads = 1);

// Bound (N |h| ell)^{1/2} log(N ell); requires h != 0.
BoundReport linear_bound_report(std::int64_t h, std::uint64_t ell, DyadicRange range,
                                int threads = 1);

struct S0Result {
  std::complex<double> sum;
  BoundReport report;
};

// S0(q;k) = sum_{L<l<=2L} e(h [Li(l k) - Li(l (k+q))]) with bound (L h |q|)^{1/2}.
// q may be negative (the reflection |S0(q;k)| = |S0(-q;k+q)|); the bound uses |q|.
S0Result s0_sum(std::int64_t h, std::int64_t q, std::uint64_t k, std::uint64_t L);

struct WvdcResult {
  double lhs = 0.0;  // |sum z_k|^2
  double rhs = 0.0;  // ((K+Q)/Q) sum_{|q|<Q} (1-|q|/Q) sum_k z_k conj(z_{k+q})
};

// Weyl-van der Corput shift inequality; z spans (K, 2K] (z[j] = z_{K+1+j}).
// The rhs is real by q <-> -q symmetry (asserted to 1e-9 relative).
// Throws std::invalid_argument unless 1 <= Q <= K = z.size().
WvdcResult wvdc_check(std::span<const std::complex<double>> z, std::uint64_t Q);

// Complex coefficients supported on (L,2L] x (K,2K] with declared log-power
// exponents A, B for the norm hypotheses  sum|alpha|^2 <= c L log^{2A} L,
// sum|beta|^2 <= c K log^{2B} K; the realized constants are recorded at
// construction.
class CoefficientPair {
 public:
  CoefficientPair(std::uint64_t L, std::vector<std::complex<double>> alpha, double A,
                  std::uint64_t K, std::vector<std::complex<double>> beta, double B);

  std::uint64_t L() const { return L_; }
  std::uint64_t K() const { return K_; }
  double A() const { return A_; }
  double B() const { return B_; }
  double alpha_norm_const() const { return c_alpha_; }
  double beta_norm_const() const { return c_beta_; }
  std::complex<double> alpha(std::uint64_t ell) const { return alpha_[ell - L_ - 1]; }
  std::complex<double> beta(std::uint64_t k) const { return beta_[k - K_ - 1]; }
  double abs_mass() const;  // (sum |alpha|) (sum |beta|)

 private:
  std::uint64_t L_, K_;
  double A_, B_;
  double c_alpha_, c_beta_;
  std::vector<std::complex<double>> alpha_, beta_;
};

struct BilinearResult {
  std::complex<double> sum;
  BoundReport report;
};

// sum_l sum_k alpha(l) beta(k) e(h Li(l k)) with bound
// K L^{5/6} h^{1/6} log^A L log^B K. Direct O(KL); throws std::length_error
// past the K*L <= 1e8 budget.
BilinearResult bilinear_sum(const CoefficientPair& pair, std::int64_t h, int threads = 1);

// sum_{from<=n<=to} e(f(n)) for an arbitrary dd phase function; the generic
// form of the van der Corput sums above.
template <typename PhaseFn>
std::complex<double> phase_sum(PhaseFn f, std::uint64_t from, std::uint64_t to) {
  std::complex<double> s = 0.0;
  for (std::uint64_t n = from; n <= to; ++n) s += unit_exp(f(n));
  return s;
}

}  // namespace pihat
