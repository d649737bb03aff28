#include "tokenmenu/binary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "tokenmenu/numeric.hpp"

namespace tokenmenu {

FullSurplusTest full_surplus_test(const TaskProfile& high, const TaskProfile& low,
                                  const ProductionParams& params) {
  const auto [h, l] = common_refinement(high, low);
  const double power = params.io_share() / params.task_exponent();
  FullSurplusTest out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (l[k].value <= 0.0) continue;
    out.integrand += h[k].length * (h[k].value - l[k].value) * std::pow(l[k].value, power);
  }
  out.full_surplus = out.integrand <= 0.0;
  return out;
}

double gross_value(const TaskProfile& profile, const EfficientPlan& plan,
                   const ProductionParams& params) {
  if (plan.segments.size() != profile.size()) {
    throw std::invalid_argument("gross_value: plan and profile segmentations differ");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    total += profile[k].length * profile[k].value *
             precision(params, plan.segments[k].x, plan.segments[k].y, plan.finetune);
  }
  return total;
}

double plan_cost(const TaskProfile& profile, const EfficientPlan& plan, const CostRates& costs) {
  double total = costs.cz() * plan.finetune;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    total += profile[k].length * (costs.cx() * plan.segments[k].x + costs.cy() * plan.segments[k].y);
  }
  return total;
}

BinaryMenu binary_menu(const TaskProfile& profile_1, const TaskProfile& profile_2, double f_1,
                       const ProductionParams& params, const CostRates& costs) {
  if (!(f_1 > 0.0 && f_1 < 1.0)) throw std::invalid_argument("f_1 must lie in (0, 1)");
  auto [r1, r2] = common_refinement(profile_1, profile_2);
  const double t1 = representative_type(r1, params).theta;
  const double t2 = representative_type(r2, params).theta;
  const bool first_high = t1 >= t2;

  BinaryMenu menu{.high = first_high ? r1 : r2,
                  .low = first_high ? r2 : r1,
                  .virtual_low = first_high ? r2 : r1,
                  .test = {},
                  .high_item = {},
                  .low_item = {}};
  menu.high_label = first_high ? 1 : 2;
  menu.high_probability = first_high ? f_1 : 1.0 - f_1;
  menu.degenerate = r1 == r2;
  menu.test = full_surplus_test(menu.high, menu.low, params);

  menu.high_item.plan = efficient_allocation(menu.high, params, costs);
  menu.high_item.transfer = gross_value(menu.high, menu.high_item.plan, params);
  if (menu.degenerate || menu.test.full_surplus) {
    menu.low_item.plan = efficient_allocation(menu.low, params, costs);
    menu.low_item.transfer = gross_value(menu.low, menu.low_item.plan, params);
    return menu;
  }

  const double odds = menu.high_probability / (1.0 - menu.high_probability);
  auto low_plan = [&](double weight) {
    std::vector<Segment> virt;
    virt.reserve(menu.low.size());
    for (std::size_t k = 0; k < menu.low.size(); ++k) {
      const double v = menu.low[k].value - weight * (menu.high[k].value - menu.low[k].value);
      virt.push_back({menu.low[k].length, std::max(v, 0.0)});
    }
    TaskProfile profile(std::move(virt));
    EfficientPlan plan = efficient_allocation(profile, params, costs);
    return std::pair{std::move(profile), std::move(plan)};
  };
  // H's gain from L's item over what L pays for it.
  auto envy = [&](const EfficientPlan& plan) {
    return gross_value(menu.high, plan, params) - gross_value(menu.low, plan, params);
  };
  auto [virt, plan] = low_plan(odds);
  if (envy(plan) < 0.0) {
    // Crossing profiles: the full distortion hands L an item H would not
    // take even at L's price. Distort only until H is indifferent.
    const double weight = numeric::bisect(
        [&](double w) { return envy(low_plan(w).second); }, 0.0, odds);
    std::tie(virt, plan) = low_plan(weight);
  }
  menu.virtual_low = std::move(virt);
  menu.low_item.plan = std::move(plan);
  // IR(L) and IC(H) bind.
  menu.low_item.transfer = gross_value(menu.low, menu.low_item.plan, params);
  menu.high_item.transfer = gross_value(menu.high, menu.high_item.plan, params) -
                            std::max(0.0, envy(menu.low_item.plan));
  return menu;
}

RevenueProfit revenue_profit(const BinaryMenu& menu, const CostRates& costs) {
  const double fh = menu.high_probability;
  RevenueProfit out;
  out.revenue = fh * menu.high_item.transfer + (1.0 - fh) * menu.low_item.transfer;
  out.profit = out.revenue - fh * plan_cost(menu.high, menu.high_item.plan, costs) -
               (1.0 - fh) * plan_cost(menu.low, menu.low_item.plan, costs);
  return out;
}

}  // namespace tokenmenu
