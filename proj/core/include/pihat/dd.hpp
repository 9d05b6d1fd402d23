// Double-double arithmetic: an unevaluated sum of two doubles giving ~31
// significant digits. Error-free transforms follow Dekker (1971) and the
// usual QD-style composition; only the operations the toolkit needs are
// provided (no sqrt, no trig at dd precision).
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace pihat {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double x) : hi(x), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
  bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace detail {

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
#if defined(FP_FAST_FMA) || defined(__FMA__)
  return {p, std::fma(a, b, -p)};
#else
  constexpr double split = 134217729.0;  // 2^27 + 1
  double ta = split * a, tb = split * b;
  double a_hi = ta - (ta - a), b_hi = tb - (tb - b);
  double a_lo = a - a_hi, b_lo = b - b_hi;
  double err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
  return {p, err};
#endif
}

}  // namespace detail

inline DD operator+(DD a, DD b) {
  DD s = detail::two_sum(a.hi, b.hi);
  DD t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator+(DD a, double b) {
  DD s = detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator+(double a, DD b) { return b + a; }

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator-(DD a, double b) { return a + (-b); }
inline DD operator-(double a, DD b) { return (-b) + a; }

inline DD operator*(DD a, DD b) {
  DD p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, double b) {
  DD p = detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator*(double a, DD b) { return b * a; }

inline DD operator/(DD a, double b) {
  double q1 = a.hi / b;
  DD p = detail::two_prod(q1, b);
  DD r = detail::two_sum(a.hi, -p.hi);
  r.lo += a.lo - p.lo;
  double q2 = (r.hi + r.lo) / b;
  return detail::quick_two_sum(q1, q2);
}

inline DD operator/(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  DD q = detail::quick_two_sum(q1, q2);
  return q + q3;
}

inline DD& operator+=(DD& a, DD b) { return a = a + b; }
inline DD& operator+=(DD& a, double b) { return a = a + b; }
inline DD& operator-=(DD& a, DD b) { return a = a - b; }
inline DD& operator*=(DD& a, DD b) { return a = a * b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// Exact floor. For a normalized pair, a non-integer hi part determines the
// floor outright (|lo| <= ulp(hi)/2 cannot bridge the gap to the next
// integer); an integer hi defers to floor(lo).
inline DD dd_floor(DD a) {
  double fh = std::floor(a.hi);
  if (fh != a.hi) return {fh, 0.0};
  double fl = std::floor(a.lo);
  return detail::quick_two_sum(fh, fl);
}

inline DD dd_frac(DD a) { return a - dd_floor(a); }  // in [0, 1)

namespace dd_const {
inline constexpr DD ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD euler_gamma{0.5772156649015329, -4.942915152430645e-18};
// offset of the logarithmic-integral normalisations: li(2)
inline constexpr DD li_two{1.045163780117493, -1.0616403481185999e-16};
inline constexpr DD two_pi{6.283185307179586, 2.4492935982947064e-16};
}  // namespace dd_const

// exp for |a| <~ 700; argument reduction by ln2 then a Taylor tail.
inline DD dd_exp(DD a) {
  if (a.hi < -745.0) return DD(0.0);
  double k = std::nearbyint(a.hi / dd_const::ln2.hi);
  DD r = a - dd_const::ln2 * k;
  DD sum = DD(1.0) + r;
  DD term = r;
  for (int n = 2; n < 40; ++n) {
    term = term * r / static_cast<double>(n);
    sum += term;
    if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  int ik = static_cast<int>(k);
  return {std::ldexp(sum.hi, ik), std::ldexp(sum.lo, ik)};
}

// log via one Newton correction of the double-precision seed.
inline DD dd_log(DD a) {
  double y0 = std::log(a.to_double());
  DD r = a * dd_exp(DD(-y0)) - 1.0;  // log(a) = y0 + log(1+r), r ~ eps
  return DD(y0) + r - r * r * 0.5;
}

}  // namespace pihat
