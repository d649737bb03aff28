#include "tokenmenu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace tokenmenu::verify {

namespace {

// 21-point Kronrod abscissae (positive half, descending) and weights; the
// odd-indexed abscissae are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980129400, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double roundoff;  // error floor below which refinement cannot help
};

Panel kronrod21(const std::function<double(double)>& fn, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = fn(centre);
  double res_g = 0.0;
  double res_k = kWgk[10] * fc;
  double res_abs = std::abs(res_k);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = fn(centre - dx);
    f2[j] = fn(centre + dx);
    res_k += kWgk[j] * (f1[j] + f2[j]);
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double ah = std::abs(half);
  res_asc *= ah;
  res_abs *= ah;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  const double roundoff = 50.0 * kEps * res_abs;
  err = std::max(err, roundoff);
  if (!std::isfinite(res_k)) throw std::runtime_error("integrate: non-finite integrand value");
  return {a, b, res_k * half, err, roundoff};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& fn, double a, double b,
                     std::span<const double> breakpoints, QuadOptions opts) {
  if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be > 0");
  QuadResult out;
  if (a == b) return out;
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::vector<double> cuts{a};
  for (double bp : breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    panels.push_back(kronrod21(fn, cuts[i], cuts[i + 1]));
  }
  out.evaluations = 21 * panels.size();

  auto by_error = [&panels](std::size_t l, std::size_t r) {
    return panels[l].error < panels[r].error;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
  double total_err = 0.0;
  double floor_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push(i);
    total_err += panels[i].error;
    floor_err += panels[i].roundoff;
  }

  while (total_err > std::max(opts.abs_tol, 2.0 * floor_err)) {
    if (panels.size() >= opts.max_panels) {
      throw std::runtime_error("integrate: tolerance not achieved within panel budget");
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) {
      throw std::runtime_error("integrate: panel width reached machine precision");
    }
    Panel left = kronrod21(fn, p.a, mid);
    Panel right = kronrod21(fn, mid, p.b);
    out.evaluations += 42;
    total_err += left.error + right.error - p.error;
    floor_err += left.roundoff + right.roundoff - p.roundoff;
    panels[worst] = left;
    panels.push_back(right);
    queue.push(worst);
    queue.push(panels.size() - 1);
  }

  // Sum in left-to-right order so the result does not depend on refinement history.
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double value = 0.0;
  double err = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    err += p.error;
  }
  out.value = sign * value;
  out.error = err;
  out.panels = panels.size();
  return out;
}

QuadResult integrate_rectangle(const std::function<double(double, double)>& fn, double ax,
                               double bx, double ay, double by,
                               std::span<const double> outer_breaks,
                               const std::function<std::vector<double>(double)>& inner_breaks,
                               QuadOptions opts) {
  const double width = std::abs(bx - ax);
  QuadOptions inner = opts;
  inner.abs_tol = 0.1 * opts.abs_tol / std::max(width, 1e-300);
  QuadOptions outer = opts;
  outer.abs_tol = 0.5 * opts.abs_tol;
  double worst_inner = 0.0;
  std::size_t evaluations = 0;
  auto slice = [&](double x) {
    const std::vector<double> breaks = inner_breaks ? inner_breaks(x) : std::vector<double>{};
    const QuadResult r = integrate([&](double y) { return fn(x, y); }, ay, by, breaks, inner);
    worst_inner = std::max(worst_inner, r.error);
    evaluations += r.evaluations;
    return r.value;
  };
  QuadResult out = integrate(slice, ax, bx, outer_breaks, outer);
  out.error += worst_inner * width;
  out.evaluations = evaluations;
  return out;
}

}  // namespace tokenmenu::verify
