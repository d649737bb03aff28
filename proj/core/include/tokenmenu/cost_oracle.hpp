#pragma once

// Numeric cost minimization, independent of the closed forms in cost.hpp.
// The constraint eliminates y; the remaining (log x, z) problem is jointly
// convex and is solved by nested golden-section searches.

#include "tokenmenu/cost.hpp"

namespace tokenmenu {

struct OracleOptions {
  double tol = 1e-6;     // accepted first-order residual (relative)
  int max_iter = 400;    // per golden-section search
};

struct OracleResult {
  CostBreakdown cost;
  double residual = 0.0;        // worst relative first-order residual
  bool floor_binds = false;
  bool floor_sign_ok = true;    // multiplier on the floor constraint is >= 0 when it binds
};

// Same conventions as the closed forms: with_floor reports z >= base,
// package and contractible report z above the base, contractible reports
// per-task x and y. Throws std::runtime_error when the residual exceeds tol.
OracleResult cost_numeric_oracle(const CostKind& kind, double target,
                                 const ProductionParams& params, const CostRates& costs,
                                 OracleOptions opts = {});

}  // namespace tokenmenu
