// The offset logarithmic integral Li(x) = integral_2^x dt/log t, its inverse,
// and the floor-of-inverse with an ambiguity guard.
//
// Production evaluation goes through the exponential integral,
// Li(x) = Ei(log x) - li(2), using the everywhere-positive power series of
// Ei on the argument range this toolkit needs (x <= ~1e12). Quadrature is
// used only as an independent oracle in the tests.
#pragma once

#include <cstdint>

#include "pihat/dd.hpp"
#include "pihat/ext_real.hpp"

namespace pihat {

// Plain double path, ~1e-15 relative; the hot loop of the counting module.
// Domain: x > 2 (x == 2 returns exactly 0). Throws std::domain_error below.
double li_fast(double x);

// Certified absolute-error bound of li_fast at argument x with result value.
double li_fast_abs_err(double x, double li_value);

// Escalated path; ~1e-28 relative.
DD li_dd(DD x);

// Li with a certified error bound; escalates so that abs_err <= 1e-9 holds
// through x = 1e10. Throws std::domain_error for x < 2, std::overflow_error
// for non-finite x.
ExtReal li_from_2(double x);

// Solves Li(p) = y for p >= 2, y >= 0. Guarded Newton from the seed
// p0 = max(3, y log max(y,3)) with a bisection fallback, then double-double
// polish; abs_err is propagated from the final residual via Li'(p) = 1/log p.
// Throws std::domain_error for y < 0 or non-finite y, std::runtime_error if
// the iteration cap is hit (does not happen for y <= 1e10).
ExtReal inverse_li(double y);

struct FloorInverseLi {
  std::uint64_t value = 0;
  bool ambiguous = false;
};

// floor(iL(n)). `ambiguous` is set when iL(n) sits within the 1e-6 guard
// band of an integer and the escalated evaluation still cannot separate it
// from the boundary; callers treat that as a failure to investigate.
FloorInverseLi floor_inverse_li(std::uint64_t n);

}  // namespace pihat
