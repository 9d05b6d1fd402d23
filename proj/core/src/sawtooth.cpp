#include "pihat/sawtooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pihat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_h_level(int H) {
  if (H < 1) throw std::domain_error("truncation level H must be >= 1");
}

std::complex<double> unit_phase(double x) { return std::polar(1.0, kTwoPi * x); }

// Adaptive Simpson on a complex integrand, budgeted so that a failure to
// converge surfaces as an error instead of a silent bad value.
struct SimpsonState {
  long evals = 0;
  long budget = 4'000'000;
};

template <typename F>
std::complex<double> eval_counted(const F& f, double x, SimpsonState& st) {
  if (++st.evals > st.budget) throw std::runtime_error("fourier_coeff_g: quadrature did not converge");
  return f(x);
}

template <typename F>
std::complex<double> simpson_rec(const F& f, double a, double b, std::complex<double> fa,
                                 std::complex<double> fm, std::complex<double> fb,
                                 std::complex<double> whole, double tol, int depth,
                                 SimpsonState& st) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  std::complex<double> flm = eval_counted(f, lm, st), frm = eval_counted(f, rm, st);
  std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  std::complex<double> delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("fourier_coeff_g: quadrature did not converge");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

template <typename F>
std::complex<double> adaptive_simpson(const F& f, double a, double b, double tol, SimpsonState& st) {
  double m = 0.5 * (a + b);
  std::complex<double> fa = eval_counted(f, a, st), fm = eval_counted(f, m, st),
                       fb = eval_counted(f, b, st);
  std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48, st);
}

}  // namespace

double psi_frac(double theta) {
  double f = theta - std::floor(theta);
  if (f >= 1.0) f = 0.0;  // guards the {x} == 1 rounding corner near integers
  return f - 0.5;
}

double nearest_int_dist(double theta) {
  double f = theta - std::floor(theta);
  return std::min(f, 1.0 - f);
}

double g_weight(double theta, int H) {
  check_h_level(H);
  double d = nearest_int_dist(theta);
  if (d == 0.0) return 1.0;
  return std::min(1.0, 1.0 / (H * d));
}

FourierTruncation::FourierTruncation(int H_) : H(H_) {
  check_h_level(H);
  coeff.reserve(H);
  for (int h = 1; h <= H; ++h) coeff.emplace_back(0.0, 1.0 / (kTwoPi * h));
}

std::complex<double> FourierTruncation::c(int h) const {
  if (h == 0 || std::abs(h) > H) throw std::out_of_range("FourierTruncation::c");
  return h > 0 ? coeff[h - 1] : std::conj(coeff[-h - 1]);
}

double psi_truncated(double theta, int H) {
  check_h_level(H);
  FourierTruncation tr(H);
  std::complex<double> sum = 0.0;
  for (int h = 1; h <= H; ++h) {
    double ht = h * theta;
    sum += tr.c(h) * unit_phase(ht);
    sum += tr.c(-h) * unit_phase(-ht);
  }
  if (std::abs(sum.imag()) > 1e-12)
    throw std::logic_error("psi_truncated: imaginary part failed to cancel");
  return sum.real();
}

double fourier_coeff_g(int h, int H) {
  check_h_level(H);
  // Smooth pieces of g on [0,1]: plateaus [0,k] and [1-k,1], decay between,
  // where k = min(1/H, 1/2) is the kink location.
  double k = std::min(1.0 / H, 0.5);
  double pts[5] = {0.0, k, 0.5, 1.0 - k, 1.0};
  auto integrand = [h, H](double t) { return g_weight(t, H) * unit_phase(-static_cast<double>(h) * t); };

  SimpsonState st;
  std::complex<double> total = 0.0;
  for (int seg = 0; seg < 4; ++seg) {
    double a = pts[seg], b = pts[seg + 1];
    if (!(b > a)) continue;
    // Pre-split oscillatory segments to ~2 panels per period before the
    // adaptive stage refines.
    int panels = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(h) * (b - a))));
    panels = std::min(panels, 1 << 16);
    double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i)
      total += adaptive_simpson(integrand, a + i * w, a + (i + 1) * w, 1e-13 / panels, st);
  }
  if (std::abs(total.imag()) > 1e-10)
    throw std::logic_error("fourier_coeff_g: imaginary part failed to cancel");
  return total.real();
}

}  // namespace pihat
