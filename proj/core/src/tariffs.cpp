#include "tokenmenu/tariffs.hpp"

#include <cmath>
#include <stdexcept>

#include "tokenmenu/numeric.hpp"
#include "tokenmenu/quadrature.hpp"

namespace tokenmenu {

namespace {

TwoPartTariff priced(double m, const CostRates& c, double p0) {
  return {m * c.cx(), m * c.cy(), m * c.cz(), p0, std::nullopt};
}

// Doubles the upper bracket until the marginal payment exceeds the value.
template <class Marginal>
double solve_foc(Marginal&& marginal, double value) {
  double hi = 1.0;
  for (int i = 0; marginal(hi) < value; ++i) {
    if (i > 2000) throw std::runtime_error("buyer_best_response: unbounded demand");
    hi *= 2.0;
  }
  return numeric::bisect([&](double q) { return marginal(q) - value; }, 0.0, hi);
}

}  // namespace

double markup(const ScalarDistribution& dist, double t) {
  const double phi = virtual_value(dist, t);
  if (!(phi > 0.0)) throw std::domain_error("markup: excluded type");
  return t / phi;
}

std::optional<TwoPartTariff> PackageTariffs::tariff(double theta) const {
  const PackageItem item = menu_.item(theta);
  if (!item.served) return std::nullopt;
  const double m = markup(menu_.distribution(), theta);
  return priced(m, menu_.cost().costs(),
                item.transfer - m * menu_.cost().package(item.quality).total);
}

std::optional<TwoPartTariff> AllocationTariffs::tariff(double w, double s) const {
  const AllocationItem item = menu_.item(w, s);
  if (!item.served) return std::nullopt;
  const double m = markup(menu_.value_distribution(), w);
  TwoPartTariff out = priced(m, menu_.cost().costs(),
                             item.transfer - m * menu_.cost().contractible(item.quality, s).total);
  out.task_cap = s;
  return out;
}

BestResponse buyer_best_response(const TwoPartTariff& tariff, const Buyer& buyer,
                                 const ProductionParams& params) {
  const CostModel prices(params, CostRates(tariff.px, tariff.py, tariff.pz));
  BestResponse out;
  if (tariff.task_cap) {
    const auto* vs = std::get_if<ValueScaleType>(&buyer);
    if (!vs) throw std::invalid_argument("capped tariff needs a value-scale buyer");
    const double s = std::min(vs->scale(), *tariff.task_cap);
    const double w = vs->value();
    if (w <= 0.0) return out;
    const double q = solve_foc([&](double v) { return prices.marginal(Contractible{s}, v); }, w);
    const CostBreakdown c = prices.contractible(q, s);
    out = {true, q, c.x, c.y, c.z, s, tariff.p0 + c.total, w * q - tariff.p0 - c.total};
  } else {
    const double theta = std::holds_alternative<ValueScaleType>(buyer)
                             ? value_scale_theta(std::get<ValueScaleType>(buyer), params).theta
                             : std::get<RepresentativeType>(buyer).theta;
    if (theta <= 0.0) return out;
    const double q = solve_foc([&](double v) { return prices.package_marginal(v); }, theta);
    const CostBreakdown c = prices.package(q);
    out = {true, q, c.x, c.y, c.z, 1.0, tariff.p0 + c.total, theta * q - tariff.p0 - c.total};
  }
  if (out.utility < 0.0) return {};
  return out;
}

verify::AuditReport assumption2_check(const AllocationMenu& menu, const verify::GridSpec& grid,
                                      double tol) {
  if (grid.axes.size() != 2) throw std::invalid_argument("assumption audit needs a (w, s) grid");
  verify::AuditReport report;
  report.name = "tariff-rent-increase";
  report.tolerance = tol;
  const double lo = menu.exclusion();
  for (const double s : grid.axes[1].points()) {
    if (!(s > 0.0)) continue;
    const double breaks[] = {menu.frontier(s)};
    for (const double w : grid.axes[0].points()) {
      double violation = 0.0;
      const double q = menu.quality(w, s);
      if (q > 0.0) {
        const auto integral = verify::integrate(
            [&](double k) { return menu.quality_scale_derivative(k, s); }, lo, w, breaks,
            {1e-12, 4000});
        violation = integral.value +
                    markup(menu.value_distribution(), w) * menu.cost().scale_derivative(q, s);
      }
      report.record(violation, {w, s});
    }
  }
  report.finish();
  return report;
}

SplitResult buyer_optimal_split(double X, double Y, double Z, const TaskProfile& profile,
                                const ProductionParams& params) {
  if (!(X >= 0.0 && Y >= 0.0 && Z >= 0.0) || !std::isfinite(X + Y + Z)) {
    throw std::invalid_argument("token totals must be finite and >= 0");
  }
  const double e = params.task_exponent();
  SplitResult out;
  out.segments.resize(profile.size());
  if (profile.all_zero()) {
    for (auto& t : out.segments) t = {X, Y};
    return out;
  }
  double norm = 0.0;
  for (const auto& seg : profile.segments()) norm += seg.length * std::pow(seg.value, 1.0 / e);
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double share = std::pow(profile[k].value, 1.0 / e) / norm;
    out.segments[k] = {X * share, Y * share};
  }
  out.theta = std::pow(norm, e);
  out.utility = out.theta * std::pow(X, params.alpha()) * std::pow(Y, params.beta()) *
                std::pow(params.base() + Z, params.gamma());
  return out;
}

}  // namespace tokenmenu
