#pragma once

// Minimum cost of producing a quality level with Cobb-Douglas technology.
//
// One kernel, C(q) = min cx x + cy y + cz z  s.t.  x^a y^b z^g = q, z >= base,
// and two adapters: token packages (z counted above the base, so C(0) = 0)
// and fully contractible allocations over s tasks (per-task tokens uniform,
// quality q = s^{1-a-b} * package quality).

#include <variant>

#include "tokenmenu/model.hpp"

namespace tokenmenu {

struct CostBreakdown {
  double total = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool finetuned = false;
};

struct WithFloor {};
struct Contractible {
  double scale = 1.0;
};
struct Package {};
using CostKind = std::variant<WithFloor, Contractible, Package>;

// Branch constants computed once per (params, costs). All members are cheap
// closed forms; hot loops should hold one of these instead of calling the
// free functions.
class CostModel {
 public:
  CostModel(const ProductionParams& params, const CostRates& costs);

  const ProductionParams& params() const { return params_; }
  const CostRates& costs() const { return costs_; }

  // Kernel quality threshold; equals the package threshold.
  double threshold() const { return qhat_; }
  double threshold(double scale) const;

  // z reported as the full level (>= base).
  CostBreakdown with_floor(double q) const;
  // X, Y totals; z counted above the base.
  CostBreakdown package(double q) const;
  // x, y per task over `scale` tasks; z shared.
  CostBreakdown contractible(double q, double scale) const;
  CostBreakdown evaluate(const CostKind& kind, double q) const;

  double package_marginal(double q) const;
  double marginal(const CostKind& kind, double q) const;
  // Quality at which the marginal cost equals lambda >= 0.
  double package_inverse_marginal(double lambda) const;
  double inverse_marginal(const CostKind& kind, double lambda) const;
  // Exponent p in C'(q) ~ q^p on the branch selected by q.
  double package_marginal_exponent(double q) const;

  // Partial derivative of contractible cost in the scale.
  double scale_derivative(double q, double scale) const;

 private:
  ProductionParams params_;
  CostRates costs_;
  double io_;           // alpha + beta
  double all_;          // alpha + beta + gamma
  double k_io_;
  double k_all_;
  double floor_coef_;   // k_io * base^{-gamma/io}
  double qhat_;
};

CostBreakdown cost_with_floor(double q, const ProductionParams& params, const CostRates& costs);
CostBreakdown contractible_cost(double q, double scale, const ProductionParams& params,
                                const CostRates& costs);
CostBreakdown package_cost(double q, const ProductionParams& params, const CostRates& costs);
double marginal_cost(const CostKind& kind, double q, const ProductionParams& params,
                     const CostRates& costs);
double cost_threshold(const CostKind& kind, const ProductionParams& params,
                      const CostRates& costs);

}  // namespace tokenmenu
