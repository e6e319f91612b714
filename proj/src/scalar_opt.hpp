#pragma once

#include <cstddef>
#include <functional>

namespace reslab::detail {

// Golden-section maximizer for a scalar function on [lo, hi]. Assumes the
// bracket already isolates the maximum of interest; returns the abscissa.
inline double golden_max(const std::function<double(double)>& g, double lo,
                         double hi, std::size_t iters = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  for (std::size_t i = 0; i < iters && (b - a) > 1e-15; ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  return gc > gd ? c : d;
}

// Bisection for the crossing of g inside [lo, hi] with g(lo) < 0 <= g(hi).
inline double bisect_root(const std::function<double(double)>& g, double lo,
                          double hi, double tol, std::size_t iters = 200) {
  for (std::size_t i = 0; i < iters && (hi - lo) > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace reslab::detail
