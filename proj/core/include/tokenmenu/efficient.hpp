#pragma once

// Social-planner allocation. Every task with positive value gets input and
// output tokens; fine-tuning tokens are shared and chosen once.

#include <vector>

#include "tokenmenu/model.hpp"

namespace tokenmenu {

struct TokenPair {
  double x = 0.0;
  double y = 0.0;
};

struct EfficientPlan {
  std::vector<TokenPair> segments;  // per-task densities, aligned with the profile
  double finetune = 0.0;
  double total_input = 0.0;
  double total_output = 0.0;
  double surplus = 0.0;
};

// Closed form. Profiles with theta at or below the fine-tuning threshold get z = 0.
EfficientPlan efficient_allocation(const TaskProfile& profile, const ProductionParams& params,
                                   const CostRates& costs);

struct NumericOptions {
  double tol = 1e-8;
  double z_bound = 1e12;
};

// Independent solve: golden-section over z on the concave value-of-z map,
// per-segment x and y from the first-order conditions at each z. Throws
// std::runtime_error if the z bracket passes opts.z_bound.
EfficientPlan efficient_allocation_numeric(const TaskProfile& profile,
                                           const ProductionParams& params,
                                           const CostRates& costs, NumericOptions opts = {});

// Net value of an arbitrary plan. Throws std::invalid_argument when the
// plan and profile segmentations differ.
double social_surplus(const EfficientPlan& plan, const TaskProfile& profile,
                      const ProductionParams& params, const CostRates& costs);

}  // namespace tokenmenu
