#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tokenmenu/cost.hpp"
#include "tokenmenu/cost_oracle.hpp"

using namespace tokenmenu;
using doctest::Approx;

namespace {
const ProductionParams quarter(0.25, 0.25, 0.25, 1.0);
const CostRates eighth(0.125, 0.125, 0.125);
const CostModel model(quarter, eighth);
}  // namespace

TEST_CASE("floor cost at zero quality") {
  const CostBreakdown c = model.with_floor(0.0);
  CHECK(c.total == Approx(0.125));
  CHECK(c.x == 0.0);
  CHECK(c.y == 0.0);
  CHECK(c.z == 1.0);
  CHECK_FALSE(c.finetuned);
}

TEST_CASE("floor cost branches meet at the threshold") {
  const ProductionParams p(0.2, 0.3, 0.15, 1.7);
  const CostRates r(0.3, 0.7, 0.2);
  const CostModel m(p, r);
  const double qh = m.threshold();
  CHECK(m.with_floor(qh * (1 - 1e-12)).total == Approx(m.with_floor(qh * (1 + 1e-12)).total));
  const double slope = std::pow(p.base(), 1 - p.returns()) * std::pow(r.cx() / p.alpha(), p.alpha()) *
                       std::pow(r.cy() / p.beta(), p.beta()) *
                       std::pow(r.cz() / p.gamma(), 1 - p.io_share());
  CHECK(m.marginal(WithFloor{}, qh * (1 - 1e-12)) == Approx(slope).epsilon(1e-9));
  CHECK(m.marginal(WithFloor{}, qh * (1 + 1e-12)) == Approx(slope).epsilon(1e-9));
}

TEST_CASE("closed forms match the numeric minimizer") {
  const OracleResult r = cost_numeric_oracle(WithFloor{}, 8.0, quarter, eighth);
  CHECK(model.with_floor(8.0).total == Approx(r.cost.total).epsilon(1e-8));
  CHECK(model.with_floor(8.0).total == Approx(6.0).epsilon(1e-14));
  for (const double q : {0.1, 1.0, 8.0}) {
    for (const double s : {0.3, 1.0}) {
      CAPTURE(q);
      CAPTURE(s);
      const double closed = model.contractible(q, s).total;
      CHECK(std::abs(closed - cost_numeric_oracle(Contractible{s}, q, quarter, eighth).cost.total) <=
            1e-7 * closed);
      const double floor = model.with_floor(q).total;
      CHECK(std::abs(floor - cost_numeric_oracle(WithFloor{}, q, quarter, eighth).cost.total) <=
            1e-7 * floor);
    }
  }
}

TEST_CASE("numeric minimizer confirms a binding floor") {
  const OracleResult r = cost_numeric_oracle(WithFloor{}, 0.5 * model.threshold(), quarter, eighth);
  CHECK(r.floor_binds);
  CHECK(r.floor_sign_ok);
  CHECK_FALSE(model.with_floor(0.5 * model.threshold()).finetuned);
}

TEST_CASE("contractible cost") {
  CHECK(model.contractible(0.0, 0.4).total == 0.0);
  CHECK_FALSE(model.contractible(0.0, 0.4).finetuned);
  // At the top type the marginal cost equals its virtual value of one.
  CHECK(model.marginal(Contractible{1.0}, 8.0) == Approx(1.0).epsilon(1e-14));
  CHECK(model.threshold(1.0) == Approx(1.0));
}

TEST_CASE("package cost") {
  CHECK(model.threshold() == Approx(1.0).epsilon(1e-14));
  CHECK(model.package(8.0).total == Approx(5.875).epsilon(1e-14));
  CHECK(model.package(0.0).total == 0.0);
  CHECK(model.package_marginal(1.0) == Approx(0.5).epsilon(1e-14));
  CHECK(model.package_marginal(0.0) == 0.0);
  CHECK(model.marginal(Contractible{0.3}, 0.0) == 0.0);
}

TEST_CASE("marginals match finite differences") {
  const ProductionParams p(0.15, 0.35, 0.2, 0.8);
  const CostRates r(0.4, 0.9, 0.3);
  const CostModel m(p, r);
  const std::vector<CostKind> kinds{WithFloor{}, Contractible{0.35}, Package{}};
  for (const CostKind& kind : kinds) {
    for (int i = 0; i < 40; ++i) {
      const double q = cost_threshold(kind, p, r) * std::pow(10.0, -1.5 + 3.0 * i / 39.0);
      const double fd = oracle::derivative([&](double v) { return m.evaluate(kind, v).total; }, q,
                                           1e-5 * q);
      CAPTURE(q);
      CHECK(std::abs(m.marginal(kind, q) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("inverse marginal agrees with bisection") {
  const std::vector<CostKind> kinds{WithFloor{}, Contractible{0.6}, Package{}};
  for (const CostKind& kind : kinds) {
    for (const double lambda : {0.01, 0.3, 0.5, 1.0, 4.0}) {
      const double q = model.inverse_marginal(kind, lambda);
      const double ref = oracle::invert_increasing(
          [&](double v) { return model.marginal(kind, v); }, lambda);
      CHECK(q == Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("scale derivative matches finite differences") {
  for (const double q : {0.2, 0.9, 3.0, 8.0}) {
    for (const double s : {0.2, 0.5, 0.95}) {
      const double fd =
          oracle::derivative([&](double v) { return model.contractible(q, v).total; }, s, 1e-6);
      CHECK(model.scale_derivative(q, s) == Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("token mix reproduces the target quality") {
  const ProductionParams p(0.1, 0.3, 0.25, 1.3);
  const CostRates r(0.2, 0.5, 1.1);
  const CostModel m(p, r);
  for (const double q : {0.05, 0.5, 5.0}) {
    const CostBreakdown f = m.with_floor(q);
    CHECK(precision(p, f.x, f.y, f.z - p.base()) == Approx(q).epsilon(1e-12));
    const CostBreakdown k = m.package(q);
    CHECK(precision(p, k.x, k.y, k.z) == Approx(q).epsilon(1e-12));
    const CostBreakdown c = m.contractible(q, 0.4);
    CHECK(0.4 * precision(p, c.x, c.y, c.z) == Approx(q).epsilon(1e-12));
  }
}
