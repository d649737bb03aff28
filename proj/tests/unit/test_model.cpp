#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tokenmenu/model.hpp"

using namespace tokenmenu;
using doctest::Approx;

namespace {
const ProductionParams quarter(0.25, 0.25, 0.25, 1.0);
}

TEST_CASE("precision") {
  CHECK(precision(quarter, 16, 16, 15) == Approx(8.0).epsilon(1e-15));
  CHECK(precision(ProductionParams(0.2, 0.3, 0.1, 2.0), 0.0, 5.0, 3.0) == 0.0);
  CHECK(precision(quarter, 1, 1, 0) == 1.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ProductionParams(0.4, 0.4, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProductionParams(0.0, 0.2, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProductionParams(0.2, 0.2, 0.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CostRates(0.1, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(TaskProfile({{0.5, 1.0}, {0.4, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TaskProfile({{0.5, 1.0}, {0.5, -0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(ValueScaleType(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ValueScaleType(1.5, 0.5), std::invalid_argument);
}

TEST_CASE("representative type") {
  CHECK(representative_type(TaskProfile::constant(1.0), quarter).theta == Approx(1.0));
  CHECK(representative_type(TaskProfile::step(1.0, 0.25), quarter).theta == Approx(0.5));
  const TaskProfile two({{0.5, 0.8}, {0.5, 0.2}});
  CHECK(representative_type(two, quarter).theta == Approx(std::sqrt(0.34)).epsilon(1e-14));
  CHECK(representative_type(TaskProfile({{1.0, 0.0}}), quarter).theta == 0.0);
}

TEST_CASE("value-scale theta") {
  CHECK(value_scale_theta(ValueScaleType(1.0, 1.0), quarter).theta == 1.0);
  CHECK(value_scale_theta(ValueScaleType(0.8, 0.25), quarter).theta == Approx(0.4));
  CHECK(value_scale_theta(ValueScaleType(0.6, 1.0), quarter).theta == Approx(0.6));
  const ValueScaleType t(0.7, 0.3);
  CHECK(value_scale_theta(t, quarter).theta ==
        Approx(representative_type(t.profile(), quarter).theta).epsilon(1e-14));
}

TEST_CASE("efficient fine-tuning threshold") {
  CHECK(efficient_finetune_threshold(quarter, CostRates(0.125, 0.125, 0.125)) ==
        Approx(0.5).epsilon(1e-14));
  const ProductionParams p(0.2, 0.2, 0.2, 1.0);
  CHECK(efficient_finetune_threshold(p, CostRates(0.2, 0.2, 0.2)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("common refinement keeps values aligned") {
  const TaskProfile a({{0.3, 1.0}, {0.7, 0.2}});
  const TaskProfile b({{0.5, 0.4}, {0.5, 0.9}});
  const auto [ra, rb] = common_refinement(a, b);
  REQUIRE(ra.size() == 3);
  REQUIRE(rb.size() == 3);
  CHECK(ra[1].length == Approx(0.2));
  CHECK(ra[1].value == 0.2);
  CHECK(rb[1].value == 0.4);
  CHECK(representative_type(ra, quarter).theta ==
        Approx(representative_type(a, quarter).theta).epsilon(1e-14));
}
