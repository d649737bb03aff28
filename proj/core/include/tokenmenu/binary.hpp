#pragma once

// Two-type screening over full task profiles. Both types share one
// fine-tuning level per item; the high type is the one with the larger
// representative type.

#include "tokenmenu/efficient.hpp"
#include "tokenmenu/model.hpp"
#include "tokenmenu/screening.hpp"

namespace tokenmenu {

struct FullSurplusTest {
  bool full_surplus = true;
  // sum_k len_k (wH_k - wL_k) wL_k^{(alpha+beta)/(1-alpha-beta)}; full surplus iff <= 0.
  double integrand = 0.0;
};

// Profiles may have different segmentations.
FullSurplusTest full_surplus_test(const TaskProfile& high, const TaskProfile& low,
                                  const ProductionParams& params);

struct BinaryItem {
  EfficientPlan plan;  // aligned with the refined profiles of the menu
  double transfer = 0.0;
};

struct BinaryMenu {
  TaskProfile high;         // common refinement of both inputs
  TaskProfile low;
  TaskProfile virtual_low;  // low's item is efficient for this profile
  double high_probability = 0.5;
  int high_label = 1;       // which input profile is high (1 or 2)
  bool degenerate = false;  // identical profiles
  FullSurplusTest test;
  BinaryItem high_item;
  BinaryItem low_item;
};

// f_1 is the probability of profile_1, in (0, 1).
BinaryMenu binary_menu(const TaskProfile& profile_1, const TaskProfile& profile_2, double f_1,
                       const ProductionParams& params, const CostRates& costs);

// sum_k len_k w_k v(x_k, y_k, z): what a buyer with `profile` gets from `plan`.
double gross_value(const TaskProfile& profile, const EfficientPlan& plan,
                   const ProductionParams& params);
// Production cost of a plan.
double plan_cost(const TaskProfile& profile, const EfficientPlan& plan, const CostRates& costs);

RevenueProfit revenue_profit(const BinaryMenu& menu, const CostRates& costs);

}  // namespace tokenmenu
