#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tokenmenu/audit.hpp"
#include "tokenmenu/screening.hpp"

using namespace tokenmenu;
using doctest::Approx;

namespace {
const ProductionParams quarter(0.25, 0.25, 0.25, 1.0);
const CostRates eighth(0.125, 0.125, 0.125);

PackageMenu packages() {
  return PackageMenu(theta_distribution(ScalarDistribution::uniform(),
                                        ScalarDistribution::uniform(), quarter),
                     quarter, eighth);
}

AllocationMenu allocations() {
  return AllocationMenu(ScalarDistribution::uniform(), ScalarDistribution::uniform(), quarter,
                        eighth);
}
}  // namespace

TEST_CASE("package menu items") {
  const PackageMenu m = packages();
  CHECK(m.exclusion() == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(m.finetune_threshold() == Approx(2.0 / 3.0).epsilon(1e-12));
  const PackageItem half = m.item(0.5);
  CHECK(half.quality == Approx(0.5).epsilon(1e-12));
  CHECK(half.X == Approx(0.25).epsilon(1e-12));
  CHECK(half.Y == Approx(0.25).epsilon(1e-12));
  CHECK(half.Z == 0.0);
  CHECK(half.transfer == Approx((9 * 0.25 - 1) / 6).epsilon(1e-12));
  const PackageItem top = m.item(1.0);
  CHECK(top.quality == Approx(8.0).epsilon(1e-12));
  CHECK(top.X == Approx(16.0).epsilon(1e-12));
  CHECK(top.Z == Approx(15.0).epsilon(1e-12));
  CHECK(top.transfer == Approx(79.0 / 12.0).epsilon(1e-12));
  const PackageItem out = m.item(0.2);
  CHECK_FALSE(out.served);
  CHECK(out.quality == 0.0);
  CHECK(out.transfer == 0.0);
}

TEST_CASE("package menu across theta matches the closed forms") {
  const PackageMenu m = packages();
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    const auto want = oracle::quarter_package(0.125, t);
    const PackageItem it = m.item(t);
    CAPTURE(t);
    CHECK(it.quality == Approx(want.Q).epsilon(1e-10));
    CHECK(it.transfer == Approx(want.T).epsilon(1e-10));
    CHECK(it.Z == Approx(want.Z).epsilon(1e-10));
  }
}

TEST_CASE("package quality solves virtual value = marginal cost") {
  const PackageMenu m = packages();
  for (const double t : {0.4, 0.6, 0.7, 0.9}) {
    const double q = oracle::invert_increasing(
        [&](double v) { return m.cost().package_marginal(v); }, m.virtual_type(t));
    CHECK(m.quality(t) == Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("allocation menu items") {
  const AllocationMenu m = allocations();
  CHECK(m.exclusion() == Approx(0.5));
  const AllocationItem a = m.item(0.6, 1.0);
  CHECK(a.quality == Approx(0.4).epsilon(1e-12));
  CHECK(a.x == Approx(0.16).epsilon(1e-12));
  CHECK(a.y == Approx(0.16).epsilon(1e-12));
  CHECK(a.z == 0.0);
  CHECK(a.transfer == Approx(0.22).epsilon(1e-12));
  const AllocationItem b = m.item(1.0, 1.0);
  CHECK(b.quality == Approx(8.0).epsilon(1e-12));
  CHECK(b.x == Approx(16.0).epsilon(1e-12));
  CHECK(b.z == Approx(15.0).epsilon(1e-12));
  CHECK(b.transfer == Approx(111.0 / 16.0).epsilon(1e-12));
  for (const double s : {0.1, 0.5, 1.0}) {
    const AllocationItem out = m.item(0.4, s);
    CHECK_FALSE(out.served);
    CHECK(out.transfer == 0.0);
    CHECK(m.frontier(s) ==
          Approx(std::min(1.0, 0.5 * (1.0 + 1.0 / (2.0 * std::sqrt(s))))).epsilon(1e-12));
  }
}

TEST_CASE("transfer is the envelope integral") {
  const AllocationMenu m = allocations();
  for (const double s : {0.3, 0.8}) {
    for (const double w : {0.7, 0.95}) {
      // Simpson on the served range, split at the frontier.
      auto q = [&](double k) { return m.quality(k, s); };
      auto simpson = [&](double a, double b) {
        const int n = 2000;
        double sum = q(a) + q(b);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * q(a + (b - a) * i / n);
        return sum * (b - a) / (3.0 * n);
      };
      const double kink = std::min(w, std::max(0.5, m.frontier(s)));
      const double rent = (simpson(0.5, kink) + (w > kink ? simpson(kink, w) : 0.0));
      CHECK(m.transfer(w, s) == Approx(w * m.quality(w, s) - rent).epsilon(1e-9));
    }
  }
}

TEST_CASE("revenue and profit") {
  const RevenueProfit a = revenue_profit(allocations());
  CHECK(std::abs(a.revenue - 139.0 / 480.0) <= 1e-6);
  CHECK(std::abs(a.profit - 97.0 / 960.0) <= 1e-6);
  const RevenueProfit p = revenue_profit(packages());
  CHECK(std::abs(p.revenue - 139.0 / 540.0) <= 1e-6);
  CHECK(std::abs(p.profit - 97.0 / 1080.0) <= 1e-6);
}

TEST_CASE("bounded rent audit") {
  const AllocationMenu m = allocations();
  const verify::GridSpec grid{{{0.0, 1.0, 50, {0.5}}, {0.02, 1.0, 50, {}}}};
  const auto report = assumption1_check(m, grid, 1e-6);
  CHECK(report.passed);
  CHECK(report.max_violation <= 1e-6);

  ScaleSchedule inflated = m.schedule();
  inflated.quality_scale_derivative = [&](double w, double s) {
    return 10.0 * m.quality_scale_derivative(w, s);
  };
  const auto broken = assumption1_check(inflated, grid, 1e-6);
  CHECK_FALSE(broken.passed);
  REQUIRE(broken.location.size() == 2);
  CHECK(broken.location[0] > 0.5);
  CHECK(broken.max_violation > 1e-3);
}
