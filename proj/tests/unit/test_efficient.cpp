#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tokenmenu/efficient.hpp"

using namespace tokenmenu;
using doctest::Approx;

namespace {
const ProductionParams quarter(0.25, 0.25, 0.25, 1.0);
const CostRates eighth(0.125, 0.125, 0.125);

void check_close(const EfficientPlan& a, const EfficientPlan& b, double rel, double base) {
  CHECK(std::abs(a.surplus - b.surplus) <= rel * std::max(1e-12, std::abs(b.surplus)));
  CHECK(std::abs(a.total_input - b.total_input) <= rel * std::max(1e-12, b.total_input));
  CHECK(std::abs(a.total_output - b.total_output) <= rel * std::max(1e-12, b.total_output));
  CHECK(std::abs(a.finetune - b.finetune) <= rel * (base + b.finetune));
}
}  // namespace

TEST_CASE("all-zero profile buys nothing") {
  const EfficientPlan plan = efficient_allocation(TaskProfile({{1.0, 0.0}}), quarter, eighth);
  CHECK(plan.surplus == 0.0);
  CHECK(plan.total_input == 0.0);
  CHECK(plan.finetune == 0.0);
  CHECK(social_surplus(plan, TaskProfile({{1.0, 0.0}}), quarter, eighth) == 0.0);
}

TEST_CASE("constant unit profile fine-tunes") {
  const TaskProfile one = TaskProfile::constant(1.0);
  const EfficientPlan plan = efficient_allocation(one, quarter, eighth);
  CHECK(plan.finetune > 0.0);
  // Symmetric FOCs: x = y = 1 + z = k with k^{-1/4} = 1/2.
  CHECK(plan.finetune == Approx(15.0).epsilon(1e-12));
  CHECK(plan.total_input == Approx(16.0).epsilon(1e-12));
  CHECK(plan.total_output == Approx(16.0).epsilon(1e-12));
  CHECK(plan.surplus == Approx(8.0 - 47.0 / 8.0).epsilon(1e-12));
  check_close(plan, efficient_allocation_numeric(one, quarter, eighth), 1e-6, 1.0);
}

TEST_CASE("equal representative types get equal totals") {
  const EfficientPlan flat = efficient_allocation(TaskProfile::constant(0.5), quarter, eighth);
  const EfficientPlan step = efficient_allocation(TaskProfile::step(1.0, 0.25), quarter, eighth);
  CHECK(flat.finetune == Approx(step.finetune).epsilon(1e-10));
  CHECK(flat.total_input == Approx(step.total_input).epsilon(1e-10));
  CHECK(flat.total_output == Approx(step.total_output).epsilon(1e-10));
  CHECK(flat.surplus == Approx(step.surplus).epsilon(1e-10));
}

TEST_CASE("below the threshold there is no fine-tuning") {
  const TaskProfile low = TaskProfile::constant(0.45);
  const EfficientPlan plan = efficient_allocation(low, quarter, eighth);
  CHECK(plan.finetune == 0.0);
  const EfficientPlan numeric = efficient_allocation_numeric(low, quarter, eighth);
  CHECK(numeric.finetune == 0.0);
  // Corner: marginal value of fine-tuning at z = 0 is below its cost.
  const double gross = plan.surplus + 0.125 * (plan.total_input + plan.total_output);
  CHECK(0.25 / 1.0 * gross <= 0.125);
}

TEST_CASE("continuity across the threshold") {
  const double th = efficient_finetune_threshold(quarter, eighth);
  const auto below = efficient_allocation(TaskProfile::constant(th * (1 - 1e-6)), quarter, eighth);
  const auto above = efficient_allocation(TaskProfile::constant(th * (1 + 1e-6)), quarter, eighth);
  CHECK(above.total_input == Approx(below.total_input).epsilon(1e-4));
  CHECK(above.surplus == Approx(below.surplus).epsilon(1e-4));
  CHECK(std::abs(above.finetune - below.finetune) <= 1e-4);
}

TEST_CASE("perturbing the plan never raises surplus") {
  const TaskProfile profile({{0.2, 0.9}, {0.5, 0.4}, {0.3, 1.0}});
  const EfficientPlan plan = efficient_allocation(profile, quarter, eighth);
  const double best = social_surplus(plan, profile, quarter, eighth);
  for (int k = 0; k < 3; ++k) {
    for (const double f : {0.99, 1.01}) {
      EfficientPlan p = plan;
      p.segments[k].x *= f;
      CHECK(social_surplus(p, profile, quarter, eighth) <= best);
      p = plan;
      p.segments[k].y *= f;
      CHECK(social_surplus(p, profile, quarter, eighth) <= best);
    }
  }
  for (const double f : {0.99, 1.01}) {
    EfficientPlan p = plan;
    p.finetune *= f;
    CHECK(social_surplus(p, profile, quarter, eighth) <= best);
  }
  CHECK_THROWS_AS(social_surplus(plan, TaskProfile::constant(1.0), quarter, eighth),
                  std::invalid_argument);
}

TEST_CASE("random scenarios agree with the numeric solver") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double total = 0.2 + 0.7 * u(rng);
    const double a = 0.1 + u(rng), b = 0.1 + u(rng), g = 0.1 + u(rng);
    const double sum = a + b + g;
    const ProductionParams params(total * a / sum, total * b / sum, total * g / sum,
                                  0.1 + 2.0 * u(rng));
    const CostRates costs(0.01 + 2.0 * u(rng), 0.01 + 2.0 * u(rng), 0.01 + 2.0 * u(rng));
    const TaskProfile profile({{0.4, u(rng)}, {0.6, 2.0 * u(rng)}});
    CAPTURE(trial);
    check_close(efficient_allocation(profile, params, costs),
                efficient_allocation_numeric(profile, params, costs), 1e-6, params.base());
  }
}
