#include "tokenmenu/cost_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tokenmenu/numeric.hpp"

namespace tokenmenu {

namespace {

// min kx x + ky y + kz z  s.t.  x^a y^b (shift + z)^g = target, z >= 0.
struct Problem {
  double a, b, g;
  double kx, ky, kz;
  double shift;
  double target;

  double y_of(double x, double z) const {
    return std::pow(target / (std::pow(x, a) * std::pow(shift + z, g)), 1.0 / b);
  }
  double objective(double u, double z) const {
    const double x = std::exp(u);
    return kx * x + ky * y_of(x, z) + kz * z;
  }
};

struct Solution {
  double x, y, z, value;
};

Solution solve(const Problem& p, int max_iter) {
  // Best log x for fixed z, bracketed by the cost of a feasible point.
  auto inner = [&](double z, double budget) {
    const double u_hi = std::log(budget / p.kx);
    const double y_max = budget / p.ky;
    const double u_lo =
        std::log(std::pow(p.target / (std::pow(y_max, p.b) * std::pow(p.shift + z, p.g)),
                          1.0 / p.a));
    return numeric::golden_minimize([&](double u) { return p.objective(u, z); },
                                    std::min(u_lo, u_hi) - 1.0, u_hi + 1.0, 1e-15, 1e-13,
                                    max_iter);
  };
  // Feasible reference at z = 0 with the FOC ratio y = (b kx)/(a ky) x.
  const double ratio = p.b * p.kx / (p.a * p.ky);
  const double x0 =
      std::pow(p.target / (std::pow(ratio, p.b) * std::pow(p.shift, p.g)), 1.0 / (p.a + p.b));
  const double budget = p.kx * x0 + p.ky * ratio * x0;
  const double z_hi = budget / p.kz;

  auto outer = [&](double z) { return inner(z, budget + p.kz * z).value; };
  const auto best_z = numeric::golden_minimize(outer, 0.0, z_hi, 1e-14, 1e-14 * p.shift, max_iter);
  const double z = best_z.argmin;
  const auto best_u = inner(z, budget + p.kz * z);
  const double x = std::exp(best_u.argmin);
  return {x, p.y_of(x, z), z, best_u.value};
}

}  // namespace

OracleResult cost_numeric_oracle(const CostKind& kind, double target,
                                 const ProductionParams& params, const CostRates& costs,
                                 OracleOptions opts) {
  if (!std::isfinite(target) || target < 0.0) {
    throw std::invalid_argument("cost_numeric_oracle: target must be finite and >= 0");
  }
  const double base = params.base();
  double scale = 1.0;
  if (const auto* c = std::get_if<Contractible>(&kind)) {
    if (!(c->scale > 0.0 && c->scale <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
    scale = c->scale;
  }
  const bool floor_kind = std::holds_alternative<WithFloor>(kind);

  OracleResult out;
  if (target == 0.0) {
    out.floor_binds = true;
    out.cost.z = floor_kind ? base : 0.0;
    out.cost.total = floor_kind ? costs.cz() * base : 0.0;
    return out;
  }
  // Contractible: per-task tokens over `scale` tasks, each task delivering target/scale.
  const Problem p{params.alpha(), params.beta(),  params.gamma(),     costs.cx() * scale,
                  costs.cy() * scale, costs.cz(), base,              target / scale};
  const Solution sol = solve(p, opts.max_iter);

  // First-order conditions: kx x / a = ky y / b = lambda * target; interior z
  // adds kz (b + z) / g = lambda * target.
  const double lx = p.kx * sol.x / p.a;
  const double ly = p.ky * sol.y / p.b;
  const double lz = p.kz * (base + sol.z) / p.g;
  out.residual = std::abs(lx - ly) / lx;
  const double z_tol = 1e-7 * (base + sol.z);
  out.floor_binds = sol.z <= z_tol;
  if (out.floor_binds) {
    out.floor_sign_ok = lz >= lx * (1.0 - opts.tol);
  } else {
    out.residual = std::max(out.residual, std::abs(lz - lx) / lx);
  }
  if (!(out.residual <= opts.tol)) {
    throw std::runtime_error("cost_numeric_oracle: first-order residual above tolerance");
  }

  out.cost.x = sol.x;
  out.cost.y = sol.y;
  out.cost.z = floor_kind ? base + sol.z : sol.z;
  out.cost.total = sol.value + (floor_kind ? costs.cz() * base : 0.0);
  out.cost.finetuned = !out.floor_binds;
  return out;
}

}  // namespace tokenmenu
