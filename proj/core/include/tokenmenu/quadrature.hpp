#pragma once

// Adaptive Gauss-Kronrod (G10/K21) quadrature with forced subdivision at
// caller-supplied breakpoints. Panels are refined largest-error-first until
// the summed error estimate falls below the absolute tolerance.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tokenmenu::verify {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-9;
  std::size_t max_panels = 4000;
};

// Integrates fn over [a, b]. Breakpoints outside (a, b) are ignored.
// Throws std::runtime_error if the tolerance is not met within max_panels.
QuadResult integrate(const std::function<double(double)>& fn, double a, double b,
                     std::span<const double> breakpoints = {}, QuadOptions opts = {});

// Iterated integral over [ax, bx] x [ay, by]. inner_breaks(x) supplies
// breakpoints of y -> fn(x, y) (may depend on x, e.g. branch curves);
// outer_breaks are breakpoints in x. The inner tolerance is a fixed fraction
// of the outer one; the reported error is the outer estimate plus the
// worst inner estimate scaled by the interval width.
QuadResult integrate_rectangle(const std::function<double(double, double)>& fn, double ax,
                               double bx, double ay, double by,
                               std::span<const double> outer_breaks,
                               const std::function<std::vector<double>(double)>& inner_breaks,
                               QuadOptions opts = {});

}  // namespace tokenmenu::verify
