#pragma once

#include "pihat/dd.hpp"

namespace pihat {

// A real quantity at double precision with an optional double-double tail
// and a guaranteed absolute error bound: |value + lo - exact| <= abs_err.
// Non-escalated results have lo == 0 and a bound reflecting the plain
// double evaluation; escalated results carry the dd pair in (value, lo).
struct ExtReal {
  double value = 0.0;
  double lo = 0.0;
  double abs_err = 0.0;
  bool escalated = false;

  DD dd() const { return {value, lo}; }
  static ExtReal exact(double v) { return {v, 0.0, 0.0, false}; }
  static ExtReal from_dd(DD v, double err) { return {v.hi, v.lo, err, true}; }
};

}  // namespace pihat
