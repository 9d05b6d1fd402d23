// The shifted fractional part psi(t) = {t} - 1/2, its truncated Fourier
// series, and the weight g(t,H) = min(1, 1/(H ||t||)) that controls the
// truncation error, together with g's Fourier coefficients.
#pragma once

#include <complex>
#include <vector>

namespace pihat {

// {t} - 1/2 in [-1/2, 1/2); psi(integer) = -1/2 (left-closed convention).
double psi_frac(double theta);

// distance to the nearest integer
double nearest_int_dist(double theta);

// min(1, 1/(H ||theta||)); returns 1 at ||theta|| = 0.
double g_weight(double theta, int H);

// Truncation coefficients c_h = -1/(2 pi i h) for 0 < |h| <= H; purely
// imaginary, c_{-h} = conj(c_h), |c_h| = 1/(2 pi h).
struct FourierTruncation {
  int H = 1;
  std::vector<std::complex<double>> coeff;  // coeff[h-1] = c_h, h = 1..H

  explicit FourierTruncation(int H);
  std::complex<double> c(int h) const;  // any 0 < |h| <= H
};

// Real part of sum_{0<|h|<=H} c_h e(h theta); the imaginary part must vanish
// (asserted to <= 1e-12 internally, throws std::logic_error otherwise).
double psi_truncated(double theta, int H);

// Fourier coefficient a_h of g(.,H) over one period, by adaptive quadrature
// split at the kink points ||theta|| = 1/H. The integral is real by symmetry;
// an imaginary part above 1e-10 throws std::logic_error, quadrature
// non-convergence throws std::runtime_error.
double fourier_coeff_g(int h, int H);

}  // namespace pihat
