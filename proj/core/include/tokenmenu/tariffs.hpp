#pragma once

// Two-part tariffs: an upfront fee plus linear token prices at a common,
// type-dependent markup over marginal cost.

#include <optional>
#include <variant>
#include <vector>

#include "tokenmenu/efficient.hpp"
#include "tokenmenu/screening.hpp"

namespace tokenmenu {

struct TwoPartTariff {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
  double p0 = 0.0;
  std::optional<double> task_cap;  // allocation setting only
};

// t / phi(t). Throws std::domain_error for excluded types (phi <= 0).
double markup(const ScalarDistribution& dist, double t);

class PackageTariffs {
 public:
  explicit PackageTariffs(PackageMenu menu) : menu_(std::move(menu)) {}
  const PackageMenu& menu() const { return menu_; }
  // Empty for excluded types.
  std::optional<TwoPartTariff> tariff(double theta) const;

 private:
  PackageMenu menu_;
};

class AllocationTariffs {
 public:
  explicit AllocationTariffs(AllocationMenu menu) : menu_(std::move(menu)) {}
  const AllocationMenu& menu() const { return menu_; }
  std::optional<TwoPartTariff> tariff(double w, double s) const;

 private:
  AllocationMenu menu_;
};

using Buyer = std::variant<ValueScaleType, RepresentativeType>;

struct BestResponse {
  bool purchased = false;
  double quality = 0.0;
  double x = 0.0;      // per task when capped, totals otherwise
  double y = 0.0;
  double z = 0.0;      // above the base
  double tasks = 1.0;  // tasks the tokens are spread over
  double payment = 0.0;
  double utility = 0.0;
};

// Cost-minimal tokens at tariff prices for each quality, then the quality
// solving value = P'(q) by bisection. Declines when the best net utility is
// negative. A capped tariff needs a value-scale buyer.
BestResponse buyer_best_response(const TwoPartTariff& tariff, const Buyer& buyer,
                                 const ProductionParams& params);

// int_{excluded}^{w} q_s(k, s) dk + m(w) C_s(q(w, s), s) over a (w, s) grid.
verify::AuditReport assumption2_check(const AllocationMenu& menu, const verify::GridSpec& grid,
                                      double tol = 1e-6);

struct SplitResult {
  std::vector<TokenPair> segments;  // per-task tokens aligned with the profile
  double theta = 0.0;
  double utility = 0.0;
};

// Spreads token totals over tasks in proportion to value^{1/(1-alpha-beta)}.
SplitResult buyer_optimal_split(double X, double Y, double Z, const TaskProfile& profile,
                                const ProductionParams& params);

}  // namespace tokenmenu
