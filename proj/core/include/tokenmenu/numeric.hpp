#pragma once

// Scalar root finding and unimodal search used across modules.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tokenmenu::numeric {

// Root of a monotone function on [lo, hi] given f(lo) and f(hi) of opposite
// sign (or zero). Iterates until the bracket stops shrinking in floating
// point, so the result is accurate to the last representable digit.
template <class F>
double bisect(F&& f, double lo, double hi, int max_iter = 400) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::domain_error("bisect: root is not bracketed");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct GoldenResult {
  double argmin;
  double value;
  int iterations;
};

// Minimizes a unimodal function on [lo, hi]. Stops when the bracket is
// narrower than abs_tol + rel_tol * |x|.
template <class F>
GoldenResult golden_minimize(F&& f, double lo, double hi, double rel_tol = 1e-12,
                             double abs_tol = 0.0, int max_iter = 500) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (b - a <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b))) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // Endpoints are candidates too: corner optima sit on the boundary.
  GoldenResult best{fc <= fd ? c : d, std::min(fc, fd), it};
  const double fa = f(lo);
  if (fa < best.value) best = {lo, fa, it};
  const double fb = f(hi);
  if (fb < best.value) best = {hi, fb, it};
  return best;
}

}  // namespace tokenmenu::numeric
