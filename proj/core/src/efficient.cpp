#include "tokenmenu/efficient.hpp"

#include <cmath>
#include <stdexcept>

#include "tokenmenu/numeric.hpp"

namespace tokenmenu {

namespace {

// Per-task tokens for value w when the fine-tuning level is fixed at z.
TokenPair tokens_at(double w, double z, const ProductionParams& p, const CostRates& c) {
  if (w <= 0.0) return {};
  const double a = p.alpha();
  const double b = p.beta();
  const double e = p.task_exponent();
  const double ratio = b * c.cx() / (a * c.cy());  // y / x
  const double x = std::pow(a * w * std::pow(p.base() + z, p.gamma()) / c.cx(), 1.0 / e) *
                   std::pow(ratio, b / e);
  return {x, ratio * x};
}

EfficientPlan plan_at(const TaskProfile& profile, double z, const ProductionParams& p,
                      const CostRates& c) {
  EfficientPlan plan;
  plan.finetune = z;
  plan.segments.reserve(profile.size());
  for (const auto& seg : profile.segments()) {
    const TokenPair t = tokens_at(seg.value, z, p, c);
    plan.segments.push_back(t);
    plan.total_input += seg.length * t.x;
    plan.total_output += seg.length * t.y;
  }
  plan.surplus = social_surplus(plan, profile, p, c);
  return plan;
}

// Gross value sum_k len_k w_k v_k at fixed z, with optimal per-task tokens.
double gross_value(const TaskProfile& profile, double z, const ProductionParams& p,
                   const CostRates& c) {
  double total = 0.0;
  for (const auto& seg : profile.segments()) {
    const TokenPair t = tokens_at(seg.value, z, p, c);
    total += seg.length * seg.value * precision(p, t.x, t.y, z);
  }
  return total;
}

}  // namespace

EfficientPlan efficient_allocation(const TaskProfile& profile, const ProductionParams& params,
                                   const CostRates& costs) {
  if (profile.all_zero()) {
    EfficientPlan empty;
    empty.segments.assign(profile.size(), {});
    return empty;
  }
  const double theta = representative_type(profile, params).theta;
  double z = 0.0;
  if (theta > efficient_finetune_threshold(params, costs)) {
    const double a = params.alpha();
    const double b = params.beta();
    const double g = params.gamma();
    const double d = 1.0 - a - b - g;
    z = std::pow(theta, 1.0 / d) * (g / costs.cz()) * std::pow(a / costs.cx(), a / d) *
            std::pow(b / costs.cy(), b / d) * std::pow(g / costs.cz(), g / d) -
        params.base();
    z = std::max(z, 0.0);
  }
  return plan_at(profile, z, params, costs);
}

EfficientPlan efficient_allocation_numeric(const TaskProfile& profile,
                                           const ProductionParams& params,
                                           const CostRates& costs, NumericOptions opts) {
  if (!(opts.tol > 0.0 && opts.tol <= 1e-3)) {
    throw std::invalid_argument("efficient_allocation_numeric: tol must lie in (0, 1e-3]");
  }
  if (profile.all_zero()) {
    EfficientPlan empty;
    empty.segments.assign(profile.size(), {});
    return empty;
  }
  const double g = params.gamma();
  const double base = params.base();
  // Envelope: d/dz of the value-of-z map is gamma/(b+z) * gross - cz.
  auto slope = [&](double z) {
    return g / (base + z) * gross_value(profile, z, params, costs) - costs.cz();
  };
  if (slope(0.0) <= 0.0) return plan_at(profile, 0.0, params, costs);

  double lo = 0.0;
  double hi = base;
  while (slope(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > opts.z_bound) {
      throw std::runtime_error("efficient_allocation_numeric: z bracket exceeded bound");
    }
  }
  auto neg_value = [&](double z) {
    return -(gross_value(profile, z, params, costs) * params.task_exponent() - costs.cz() * z);
  };
  const auto best = numeric::golden_minimize(neg_value, lo, hi, std::min(opts.tol, 1e-10));
  return plan_at(profile, best.argmin, params, costs);
}

double social_surplus(const EfficientPlan& plan, const TaskProfile& profile,
                      const ProductionParams& params, const CostRates& costs) {
  if (plan.segments.size() != profile.size()) {
    throw std::invalid_argument("social_surplus: plan and profile segmentations differ");
  }
  double total = -costs.cz() * plan.finetune;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const auto& seg = profile[k];
    const auto& t = plan.segments[k];
    total += seg.length * (seg.value * precision(params, t.x, t.y, plan.finetune) -
                           costs.cx() * t.x - costs.cy() * t.y);
  }
  return total;
}

}  // namespace tokenmenu
