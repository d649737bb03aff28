#pragma once

// Revenue-optimal direct menus. Qualities come from equating the virtual
// type with marginal cost; transfers from the envelope identity
// T(t) = t q(t) - int_{excluded}^{t} q.

#include <functional>

#include "tokenmenu/cost.hpp"
#include "tokenmenu/distribution.hpp"
#include "tokenmenu/model.hpp"
#include "tokenmenu/report.hpp"

namespace tokenmenu {

struct ScreeningOptions {
  double quad_tol = 1e-12;             // envelope integrals
  std::size_t monotone_samples = 1024; // virtual-value monotonicity check
};

struct RevenueProfit {
  double revenue = 0.0;
  double profit = 0.0;
  double revenue_error = 0.0;
  double profit_error = 0.0;
};

struct PackageItem {
  double theta = 0.0;
  double quality = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
  double transfer = 0.0;
  bool served = false;
};

// Token packages indexed by the representative type theta.
class PackageMenu {
 public:
  PackageMenu(ScalarDistribution theta_dist, const ProductionParams& params,
              const CostRates& costs, ScreeningOptions opts = {});

  const ScalarDistribution& distribution() const { return dist_; }
  const CostModel& cost() const { return cost_; }
  double virtual_type(double theta) const { return virtual_value(dist_, theta); }
  double exclusion() const { return exclusion_; }
  // Types above this fine-tune; the upper support end if none do.
  double finetune_threshold() const { return finetune_; }

  double quality(double theta) const;
  double transfer(double theta) const;
  PackageItem item(double theta) const;

 private:
  ScalarDistribution dist_;
  CostModel cost_;
  ScreeningOptions opts_;
  double exclusion_;
  double finetune_;
};

struct AllocationItem {
  double value = 0.0;
  double scale = 1.0;
  double quality = 0.0;
  double x = 0.0;  // per task
  double y = 0.0;  // per task
  double z = 0.0;
  double transfer = 0.0;
  bool served = false;
};

// Quality schedule seen by the rent audits; a seam for fault injection.
struct ScaleSchedule {
  std::function<double(double, double)> quality;
  std::function<double(double, double)> quality_scale_derivative;
  double exclusion = 0.0;
  std::function<double(double)> frontier;  // w above which type (w, s) fine-tunes
};

// Per-task token allocations indexed by value-scale types (w, s).
class AllocationMenu {
 public:
  AllocationMenu(ScalarDistribution value_dist, ScalarDistribution scale_dist,
                 const ProductionParams& params, const CostRates& costs,
                 ScreeningOptions opts = {});

  const ScalarDistribution& value_distribution() const { return value_; }
  const ScalarDistribution& scale_distribution() const { return scale_; }
  const CostModel& cost() const { return cost_; }
  double virtual_value_at(double w) const { return virtual_value(value_, w); }
  double exclusion() const { return exclusion_; }
  double frontier(double s) const;

  double quality(double w, double s) const;
  // Exact within a branch: q is a power of s at fixed w.
  double quality_scale_derivative(double w, double s) const;
  double transfer(double w, double s) const;
  AllocationItem item(double w, double s) const;
  ScaleSchedule schedule() const;

 private:
  ScalarDistribution value_;
  ScalarDistribution scale_;
  CostModel cost_;
  ScreeningOptions opts_;
  double exclusion_;
};

RevenueProfit revenue_profit(const PackageMenu& menu, double tol = 1e-10);
RevenueProfit revenue_profit(const AllocationMenu& menu, double tol = 1e-10);

// s * int_{excluded}^{w} q_s(k, s) dk - w q(w, s) over a (w, s) grid.
verify::AuditReport assumption1_check(const ScaleSchedule& schedule, const verify::GridSpec& grid,
                                      double tol = 1e-6);
verify::AuditReport assumption1_check(const AllocationMenu& menu, const verify::GridSpec& grid,
                                      double tol = 1e-6);

}  // namespace tokenmenu
