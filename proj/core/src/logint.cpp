#include "pihat/logint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pihat {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kLiTwo = 1.0451637801174927848;  // li(2)
constexpr int kSeriesCap = 600;

// Ei(t) = gamma + log t + sum_{k>=1} t^k/(k k!), all terms positive for
// t > 0, so the summation is cancellation-free.
double ei_series(double t) {
  double term = 1.0;
  double sum = 0.0, comp = 0.0;  // Kahan-compensated
  for (int k = 1; k < kSeriesCap; ++k) {
    term *= t / k;
    double u = term / k;
    double y = u - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (u < sum * 1e-18) break;
  }
  return kEulerGamma + std::log(t) + sum;
}

DD ei_series_dd(DD t) {
  DD term(1.0);
  DD sum(0.0);
  for (int k = 1; k < kSeriesCap; ++k) {
    term = term * t / static_cast<double>(k);
    DD u = term / static_cast<double>(k);
    sum += u;
    if (u.hi < std::abs(sum.hi) * 1e-34) break;
  }
  return dd_const::euler_gamma + dd_log(t) + sum;
}

void check_li_domain(double x) {
  if (!std::isfinite(x)) throw std::overflow_error("li_from_2: non-finite argument");
  if (x < 2.0) throw std::domain_error("li_from_2: argument below 2");
}

}  // namespace

double li_fast(double x) {
  check_li_domain(x);
  if (x == 2.0) return 0.0;
  return ei_series(std::log(x)) - kLiTwo;
}

DD li_dd(DD x) {
  if (x.hi == 2.0 && x.lo == 0.0) return DD(0.0);
  return ei_series_dd(dd_log(x)) - dd_const::li_two;
}

ExtReal li_from_2(double x) {
  check_li_domain(x);
  if (x == 2.0) return ExtReal::exact(0.0);
  DD v = li_dd(DD(x));
  // The dd series keeps ~1e-30 relative; certify a wide margin above it.
  double err = 1e-26 * (std::abs(v.hi) + 1.0);
  return ExtReal::from_dd(v, err);
}

// Error bound of the plain double path, validated against the dd path in
// the test suite. The dominant term is the half-ulp rounding of log(x),
// which enters Ei(t) with relative weight ~ulp(t)/2 * dlogEi/dt ~ t*eps/2;
// series rounding and the li(2) subtraction add a few eps more.
double li_fast_abs_err(double x, double li_value) {
  constexpr double eps = 2.3e-16;
  double t = std::log(std::max(x, 2.5));
  return eps * (0.6 * t + 4.0) * (std::abs(li_value) + 2.0);
}

ExtReal inverse_li(double y) {
  if (!std::isfinite(y) || y < 0.0) throw std::domain_error("inverse_li: argument must be finite and >= 0");
  if (y == 0.0) return ExtReal::exact(2.0);

  double lo = 2.0;
  double hi = 4.0 * y * std::log(y + 3.0) + 10.0;
  double p = std::clamp(std::max(3.0, y * std::log(std::max(y, 3.0))), lo, hi);

  constexpr int kCap = 60;
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int it = 0; it < kCap; ++it) {
    double f = li_fast(std::max(p, 2.0)) - y;
    if (f > 0.0) hi = std::min(hi, p); else lo = std::max(lo, p);
    double step = f * std::log(p);
    if (std::abs(step) <= tol * p) {  // already at the root
      converged = true;
      break;
    }
    double pn = p - step;
    if (!(pn > lo && pn < hi)) pn = 0.5 * (lo + hi);  // bisection fallback
    double delta = std::abs(pn - p);
    p = pn;
    if (delta <= tol * p) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("inverse_li: iteration cap reached");

  // Two dd Newton polish steps; the double seed is already ~1e-16 relative,
  // so the first step lands near the dd noise floor.
  DD pd(p);
  DD logp = dd_log(pd);
  for (int it = 0; it < 2; ++it) {
    DD r = li_dd(pd) - y;
    pd = pd - r * logp;
  }
  DD resid = li_dd(pd) - y;
  double err = (std::abs(resid.to_double()) + 1e-26 * (y + 1.0)) * std::log(pd.hi) * 1.0001;
  return ExtReal::from_dd(pd, err);
}

FloorInverseLi floor_inverse_li(std::uint64_t n) {
  if (n == 0) return {2, false};  // Li(2) = 0 exactly
  ExtReal p = inverse_li(static_cast<double>(n));
  DD v = p.dd();
  DD fl = dd_floor(v);
  // Ambiguous iff [v - abs_err, v + abs_err] straddles an integer, i.e. the
  // escalated value still cannot be separated from a floor boundary.
  bool ambiguous = (v - p.abs_err < fl) || (v + p.abs_err >= fl + 1.0);
  return {static_cast<std::uint64_t>(fl.hi), ambiguous};
}

}  // namespace pihat
