#include "tokenmenu/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace tokenmenu {

namespace {

void require_quality(double q) {
  if (!std::isfinite(q) || q < 0.0) throw std::invalid_argument("quality must be finite and >= 0");
}

void require_scale(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

CostModel::CostModel(const ProductionParams& params, const CostRates& costs)
    : params_(params), costs_(costs) {
  const double a = params.alpha();
  const double b = params.beta();
  const double g = params.gamma();
  io_ = a + b;
  all_ = a + b + g;
  k_io_ = std::pow(costs.cx() / a, a / io_) * std::pow(costs.cy() / b, b / io_);
  k_all_ = std::pow(costs.cx() / a, a / all_) * std::pow(costs.cy() / b, b / all_) *
           std::pow(costs.cz() / g, g / all_);
  floor_coef_ = k_io_ * std::pow(params.base(), -g / io_);
  qhat_ = std::pow(params.base(), all_) * std::pow(a / costs.cx(), a) *
          std::pow(b / costs.cy(), b) * std::pow(costs.cz() / g, io_);
}

double CostModel::threshold(double scale) const {
  require_scale(scale);
  return std::pow(scale, params_.task_exponent()) * qhat_;
}

CostBreakdown CostModel::with_floor(double q) const {
  require_quality(q);
  const double a = params_.alpha();
  const double b = params_.beta();
  CostBreakdown out;
  if (q <= qhat_) {
    const double scale = floor_coef_ * std::pow(q, 1.0 / io_);
    out.x = a / costs_.cx() * scale;
    out.y = b / costs_.cy() * scale;
    out.z = params_.base();
    out.total = io_ * scale + costs_.cz() * params_.base();
  } else {
    const double scale = k_all_ * std::pow(q, 1.0 / all_);
    out.x = a / costs_.cx() * scale;
    out.y = b / costs_.cy() * scale;
    out.z = params_.gamma() / costs_.cz() * scale;
    out.total = all_ * scale;
    out.finetuned = true;
  }
  return out;
}

CostBreakdown CostModel::package(double q) const {
  CostBreakdown out = with_floor(q);
  out.total -= costs_.cz() * params_.base();
  out.z = out.finetuned ? std::max(out.z - params_.base(), 0.0) : 0.0;
  if (q == 0.0) out.total = 0.0;
  return out;
}

CostBreakdown CostModel::contractible(double q, double scale) const {
  require_scale(scale);
  CostBreakdown out = package(q * std::pow(scale, -params_.task_exponent()));
  out.x /= scale;
  out.y /= scale;
  return out;
}

CostBreakdown CostModel::evaluate(const CostKind& kind, double q) const {
  return std::visit(Overloaded{[&](WithFloor) { return with_floor(q); },
                               [&](Contractible c) { return contractible(q, c.scale); },
                               [&](Package) { return package(q); }},
                    kind);
}

double CostModel::package_marginal(double q) const {
  require_quality(q);
  if (q == 0.0) return 0.0;
  if (q <= qhat_) return floor_coef_ * std::pow(q, 1.0 / io_ - 1.0);
  return k_all_ * std::pow(q, 1.0 / all_ - 1.0);
}

double CostModel::marginal(const CostKind& kind, double q) const {
  return std::visit(Overloaded{[&](WithFloor) { return package_marginal(q); },
                               [&](Contractible c) {
                                 require_scale(c.scale);
                                 const double f = std::pow(c.scale, -params_.task_exponent());
                                 return package_marginal(q * f) * f;
                               },
                               [&](Package) { return package_marginal(q); }},
                    kind);
}

double CostModel::package_inverse_marginal(double lambda) const {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("marginal cost level must be finite and >= 0");
  }
  if (lambda == 0.0) return 0.0;
  // The marginal cost at the threshold is the same from both sides.
  const double at_hat = k_all_ * std::pow(qhat_, 1.0 / all_ - 1.0);
  if (lambda <= at_hat) return std::pow(lambda / floor_coef_, 1.0 / (1.0 / io_ - 1.0));
  return std::pow(lambda / k_all_, 1.0 / (1.0 / all_ - 1.0));
}

double CostModel::inverse_marginal(const CostKind& kind, double lambda) const {
  return std::visit(Overloaded{[&](WithFloor) { return package_inverse_marginal(lambda); },
                               [&](Contractible c) {
                                 require_scale(c.scale);
                                 const double f = std::pow(c.scale, params_.task_exponent());
                                 return f * package_inverse_marginal(lambda * f);
                               },
                               [&](Package) { return package_inverse_marginal(lambda); }},
                    kind);
}

double CostModel::package_marginal_exponent(double q) const {
  return q <= qhat_ ? 1.0 / io_ - 1.0 : 1.0 / all_ - 1.0;
}

double CostModel::scale_derivative(double q, double scale) const {
  require_quality(q);
  require_scale(scale);
  const double e = params_.task_exponent();
  const double f = std::pow(scale, -e);
  return -e * q * f / scale * package_marginal(q * f);
}

CostBreakdown cost_with_floor(double q, const ProductionParams& params, const CostRates& costs) {
  return CostModel(params, costs).with_floor(q);
}

CostBreakdown contractible_cost(double q, double scale, const ProductionParams& params,
                                const CostRates& costs) {
  return CostModel(params, costs).contractible(q, scale);
}

CostBreakdown package_cost(double q, const ProductionParams& params, const CostRates& costs) {
  return CostModel(params, costs).package(q);
}

double marginal_cost(const CostKind& kind, double q, const ProductionParams& params,
                     const CostRates& costs) {
  return CostModel(params, costs).marginal(kind, q);
}

double cost_threshold(const CostKind& kind, const ProductionParams& params,
                      const CostRates& costs) {
  const CostModel model(params, costs);
  if (const auto* c = std::get_if<Contractible>(&kind)) return model.threshold(c->scale);
  return model.threshold();
}

}  // namespace tokenmenu
