#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tokenmenu/tariffs.hpp"

using namespace tokenmenu;
using doctest::Approx;

namespace {
const ProductionParams quarter(0.25, 0.25, 0.25, 1.0);
const CostRates eighth(0.125, 0.125, 0.125);

PackageTariffs package_tariffs() {
  return PackageTariffs(PackageMenu(
      theta_distribution(ScalarDistribution::uniform(), ScalarDistribution::uniform(), quarter),
      quarter, eighth));
}

AllocationTariffs allocation_tariffs() {
  return AllocationTariffs(AllocationMenu(ScalarDistribution::uniform(),
                                          ScalarDistribution::uniform(), quarter, eighth));
}
}  // namespace

TEST_CASE("markups") {
  const auto theta = ScalarDistribution::uniform_theta(0.5);
  CHECK(markup(theta, 1.0) == Approx(1.0));
  CHECK(markup(theta, 0.5) == Approx(2.0));
  CHECK(markup(ScalarDistribution::uniform(), 0.75) == Approx(1.5));
  CHECK_THROWS_AS(markup(ScalarDistribution::uniform(), 0.4), std::domain_error);
}

TEST_CASE("package tariffs") {
  const PackageTariffs t = package_tariffs();
  const auto top = t.tariff(1.0);
  REQUIRE(top);
  CHECK(top->px == Approx(0.125));
  CHECK(top->p0 == Approx(1.0 / 24.0 + 2.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(top->task_cap);
  const auto half = t.tariff(0.5);
  REQUIRE(half);
  CHECK(half->px == Approx(0.25));
  CHECK(half->p0 == Approx(1.0 / 12.0).epsilon(1e-12));
  const auto edge = t.tariff(1.0 / 3.0 + 1e-9);
  REQUIRE(edge);
  CHECK(edge->p0 == Approx(0.0).epsilon(1e-8));
  CHECK_FALSE(t.tariff(0.2));
}

TEST_CASE("allocation tariffs") {
  const AllocationTariffs t = allocation_tariffs();
  const auto top = t.tariff(1.0, 1.0);
  REQUIRE(top);
  CHECK(top->px == Approx(0.125));
  CHECK(top->pz == Approx(0.125));
  // Fee net of the marked-up base level.
  CHECK(top->p0 == Approx(15.0 / 16.0 + 0.125).epsilon(1e-12));
  CHECK(top->task_cap.value() == 1.0);
  const auto low = t.tariff(0.6, 0.5);
  REQUIRE(low);
  CHECK(low->p0 == Approx(0.05).epsilon(1e-12));
  CHECK_FALSE(t.tariff(0.4, 0.5));
}

TEST_CASE("prices share one markup") {
  const ProductionParams p(0.2, 0.3, 0.1, 1.5);
  const CostRates c(0.3, 0.9, 0.45);
  const AllocationTariffs t(AllocationMenu(ScalarDistribution::uniform(),
                                           ScalarDistribution::uniform(), p, c));
  for (const double w : {0.55, 0.8, 1.0}) {
    const auto tariff = t.tariff(w, 0.6);
    REQUIRE(tariff);
    CHECK(tariff->px / tariff->py == Approx(c.cx() / c.cy()).epsilon(1e-14));
    CHECK(tariff->px / tariff->pz == Approx(c.cx() / c.cz()).epsilon(1e-14));
    CHECK(tariff->p0 >= 0.0);
  }
}

TEST_CASE("fee rises with scale") {
  const AllocationTariffs t = allocation_tariffs();
  for (int i = 0; i < 20; ++i) {
    const double w = 0.5 + 0.5 * (i + 0.5) / 20;
    double prev = -1.0;
    for (int j = 0; j < 20; ++j) {
      const double p0 = t.tariff(w, (j + 1) / 20.0)->p0;
      CHECK(p0 >= prev - 1e-12);
      prev = p0;
    }
  }
}

TEST_CASE("own tariff reproduces the direct item") {
  const PackageTariffs pt = package_tariffs();
  for (const double theta : {0.4, 0.6, 2.0 / 3.0, 0.8, 1.0}) {
    const auto br = buyer_best_response(*pt.tariff(theta), RepresentativeType{theta}, quarter);
    const PackageItem it = pt.menu().item(theta);
    CHECK(br.purchased);
    CHECK(br.quality == Approx(it.quality).epsilon(1e-8));
    CHECK(br.z == Approx(it.Z).epsilon(1e-8));
    CHECK(br.payment == Approx(it.transfer).epsilon(1e-8));
  }
  const AllocationTariffs at = allocation_tariffs();
  for (const double w : {0.6, 0.8, 1.0}) {
    for (const double s : {0.25, 1.0}) {
      const auto br = buyer_best_response(*at.tariff(w, s), ValueScaleType(w, s), quarter);
      const AllocationItem it = at.menu().item(w, s);
      CHECK(br.quality == Approx(it.quality).epsilon(1e-8));
      CHECK(br.x == Approx(it.x).epsilon(1e-8));
      CHECK(br.payment == Approx(it.transfer).epsilon(1e-8));
      CHECK(br.tasks == Approx(s));
    }
  }
}

TEST_CASE("zero-value buyer declines") {
  const auto tariff = *package_tariffs().tariff(0.9);
  const auto br = buyer_best_response(tariff, RepresentativeType{0.0}, quarter);
  CHECK_FALSE(br.purchased);
  CHECK(br.payment == 0.0);
  CHECK(br.utility == 0.0);
}

TEST_CASE("equal representative types value package tariffs equally") {
  const PackageTariffs pt = package_tariffs();
  // (w, s) = (0.8, 0.25) and (0.4, 1) share theta = 0.4.
  const double a = value_scale_theta(ValueScaleType(0.8, 0.25), quarter).theta;
  const double b = value_scale_theta(ValueScaleType(0.4, 1.0), quarter).theta;
  for (const double item : {0.5, 0.7, 0.95}) {
    const auto tariff = *pt.tariff(item);
    CHECK(buyer_best_response(tariff, RepresentativeType{a}, quarter).utility ==
          Approx(buyer_best_response(tariff, RepresentativeType{b}, quarter).utility).epsilon(1e-9));
  }
}

TEST_CASE("no profitable item swap") {
  const AllocationTariffs at = allocation_tariffs();
  std::vector<std::pair<double, double>> items;
  for (int i = 0; i < 50; ++i) items.emplace_back(0.51 + 0.49 * (i % 10) / 9.0, 0.2 + 0.8 * (i / 10) / 4.0);
  std::vector<TwoPartTariff> tariffs;
  for (const auto& [w, s] : items) tariffs.push_back(*at.tariff(w, s));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double w = (i + 0.5) / 50.0;
      const double s = (j + 0.5) / 50.0;
      const ValueScaleType buyer(w, s);
      const auto own = at.tariff(w, s);
      const double mine = own ? buyer_best_response(*own, buyer, quarter).utility : 0.0;
      for (const auto& t : tariffs) {
        const double other = buyer_best_response(t, buyer, quarter).utility;
        worst = std::max(worst, other - mine);
      }
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("bounded rent increase") {
  const AllocationMenu m(ScalarDistribution::uniform(), ScalarDistribution::uniform(), quarter,
                         eighth);
  const verify::GridSpec grid{{{0.0, 1.0, 50, {0.5}}, {0.02, 1.0, 50, {}}}};
  CHECK(assumption2_check(m, grid).passed);
  CHECK(assumption1_check(m, grid).passed);
  const AllocationMenu fixed(ScalarDistribution::uniform(), ScalarDistribution::point(0.5), quarter,
                             eighth);
  const verify::GridSpec one{{{0.0, 1.0, 50, {0.5}}, {0.5, 0.5 + 1e-9, 2, {}}}};
  CHECK(assumption2_check(fixed, one).passed);
}

TEST_CASE("optimal split") {
  const ProductionParams p(0.2, 0.3, 0.25, 1.0);
  const SplitResult flat = buyer_optimal_split(2.0, 3.0, 1.0, TaskProfile::constant(1.0), p);
  CHECK(flat.segments[0].x == Approx(2.0));
  CHECK(flat.utility == Approx(std::pow(2.0, 0.2) * std::pow(3.0, 0.3) * std::pow(2.0, 0.25)));

  const SplitResult step = buyer_optimal_split(1.0, 1.0, 0.0, TaskProfile::step(1.0, 0.25), quarter);
  REQUIRE(step.segments.size() == 2);
  CHECK(step.segments[0].x == Approx(4.0));
  CHECK(step.segments[1].x == 0.0);
  CHECK(step.utility == Approx(0.5));
  CHECK(step.theta == Approx(0.5));

  const SplitResult none = buyer_optimal_split(1.0, 1.0, 0.0, TaskProfile({{1.0, 0.0}}), quarter);
  CHECK(none.utility == 0.0);
  CHECK(none.segments[0].x == Approx(1.0));
}

TEST_CASE("split matches brute force on 16 segments") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ProductionParams p(0.3, 0.15, 0.2, 0.6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Segment> segs;
    for (int k = 0; k < 16; ++k) segs.push_back({1.0 / 16.0, u(rng)});
    const TaskProfile profile(segs);
    const double X = 0.5 + u(rng), Y = 0.5 + u(rng), Z = u(rng);
    const auto ours = buyer_optimal_split(X, Y, Z, profile, p);
    const auto ref = oracle::split(X, Y, Z, profile, p);
    CHECK(ours.utility == Approx(ref.utility).epsilon(1e-6));
    CHECK(ours.utility >= ref.utility * (1 - 1e-12));
  }
}
