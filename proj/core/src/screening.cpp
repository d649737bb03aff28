#include "tokenmenu/screening.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tokenmenu/numeric.hpp"
#include "tokenmenu/quadrature.hpp"

namespace tokenmenu {

namespace {

// Virtual value, with zero-density points at the lower end treated as -inf
// (they are never served).
double phi_or_low(const ScalarDistribution& d, double t) {
  try {
    return virtual_value(d, t);
  } catch (const std::domain_error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

double find_exclusion(const ScalarDistribution& d) {
  const auto [lo, hi] = d.support();
  if (phi_or_low(d, lo) > 0.0) return lo;
  if (phi_or_low(d, hi) <= 0.0) return hi;
  return numeric::bisect([&](double t) { return phi_or_low(d, t); }, lo, hi);
}

void require_increasing(const ScalarDistribution& d, double from, std::size_t samples) {
  const double hi = d.support().second;
  if (!(from < hi) || samples < 2) return;
  double prev = phi_or_low(d, from);
  for (std::size_t i = 1; i < samples; ++i) {
    const double t = from + (hi - from) * static_cast<double>(i) / (samples - 1);
    const double cur = phi_or_low(d, t);
    if (cur < prev - 1e-12 * (1.0 + std::abs(prev))) {
      throw std::domain_error("virtual value is not increasing on the served region");
    }
    prev = cur;
  }
}

// Smallest served t with phi(t) >= level, or the upper support end.
double level_crossing(const ScalarDistribution& d, double from, double level) {
  const double hi = d.support().second;
  if (phi_or_low(d, hi) <= level) return hi;
  if (phi_or_low(d, from) >= level) return from;
  return numeric::bisect([&](double t) { return phi_or_low(d, t) - level; }, from, hi);
}

}  // namespace

PackageMenu::PackageMenu(ScalarDistribution theta_dist, const ProductionParams& params,
                         const CostRates& costs, ScreeningOptions opts)
    : dist_(std::move(theta_dist)), cost_(params, costs), opts_(opts) {
  if (dist_.is_point()) throw std::invalid_argument("package menu needs a theta density");
  exclusion_ = find_exclusion(dist_);
  require_increasing(dist_, exclusion_, opts_.monotone_samples);
  finetune_ = level_crossing(dist_, exclusion_, cost_.package_marginal(cost_.threshold()));
}

double PackageMenu::quality(double theta) const {
  if (theta <= exclusion_) return 0.0;
  const double phi = virtual_type(theta);
  return phi > 0.0 ? cost_.package_inverse_marginal(phi) : 0.0;
}

double PackageMenu::transfer(double theta) const {
  const double q = quality(theta);
  if (q == 0.0) return 0.0;
  const double breaks[] = {finetune_};
  const auto rent = verify::integrate([this](double t) { return quality(t); }, exclusion_, theta,
                                      breaks, {opts_.quad_tol, 4000});
  return theta * q - rent.value;
}

PackageItem PackageMenu::item(double theta) const {
  PackageItem out;
  out.theta = theta;
  out.quality = quality(theta);
  if (out.quality == 0.0) return out;
  const CostBreakdown c = cost_.package(out.quality);
  out.X = c.x;
  out.Y = c.y;
  out.Z = c.z;
  out.transfer = transfer(theta);
  out.served = true;
  return out;
}

AllocationMenu::AllocationMenu(ScalarDistribution value_dist, ScalarDistribution scale_dist,
                               const ProductionParams& params, const CostRates& costs,
                               ScreeningOptions opts)
    : value_(std::move(value_dist)), scale_(std::move(scale_dist)), cost_(params, costs),
      opts_(opts) {
  if (value_.is_point()) throw std::invalid_argument("allocation menu needs a value density");
  const auto [slo, shi] = scale_.support();
  if (slo < 0.0 || shi > 1.0) throw std::invalid_argument("scale support must lie in [0, 1]");
  exclusion_ = find_exclusion(value_);
  require_increasing(value_, exclusion_, opts_.monotone_samples);
}

double AllocationMenu::frontier(double s) const {
  const double e = cost_.params().task_exponent();
  const double level = cost_.package_marginal(cost_.threshold()) * std::pow(s, -e);
  return level_crossing(value_, exclusion_, level);
}

double AllocationMenu::quality(double w, double s) const {
  if (w <= exclusion_) return 0.0;
  const double phi = virtual_value_at(w);
  return phi > 0.0 ? cost_.inverse_marginal(Contractible{s}, phi) : 0.0;
}

double AllocationMenu::quality_scale_derivative(double w, double s) const {
  const double q = quality(w, s);
  if (q == 0.0) return 0.0;
  const double e = cost_.params().task_exponent();
  const double p = cost_.package_marginal_exponent(q * std::pow(s, -e));
  return e * (1.0 + 1.0 / p) * q / s;
}

double AllocationMenu::transfer(double w, double s) const {
  const double q = quality(w, s);
  if (q == 0.0) return 0.0;
  const double breaks[] = {frontier(s)};
  const auto rent = verify::integrate([&](double k) { return quality(k, s); }, exclusion_, w,
                                      breaks, {opts_.quad_tol, 4000});
  return w * q - rent.value;
}

AllocationItem AllocationMenu::item(double w, double s) const {
  AllocationItem out;
  out.value = w;
  out.scale = s;
  out.quality = quality(w, s);
  if (out.quality == 0.0) return out;
  const CostBreakdown c = cost_.contractible(out.quality, s);
  out.x = c.x;
  out.y = c.y;
  out.z = c.z;
  out.transfer = transfer(w, s);
  out.served = true;
  return out;
}

ScaleSchedule AllocationMenu::schedule() const {
  ScaleSchedule out;
  out.quality = [this](double w, double s) { return quality(w, s); };
  out.quality_scale_derivative = [this](double w, double s) {
    return quality_scale_derivative(w, s);
  };
  out.exclusion = exclusion_;
  out.frontier = [this](double s) { return frontier(s); };
  return out;
}

RevenueProfit revenue_profit(const PackageMenu& menu, double tol) {
  RevenueProfit out;
  const auto& d = menu.distribution();
  const double lo = menu.exclusion();
  const double hi = d.support().second;
  if (!(lo < hi)) return out;
  std::vector<double> breaks{menu.finetune_threshold()};
  const verify::QuadOptions opts{tol, 4000};
  const auto rev = verify::integrate(
      [&](double t) { return menu.transfer(t) * d.pdf(t); }, lo, hi, breaks, opts);
  const auto prof = verify::integrate(
      [&](double t) {
        return (menu.transfer(t) - menu.cost().package(menu.quality(t)).total) * d.pdf(t);
      },
      lo, hi, breaks, opts);
  out.revenue = rev.value;
  out.profit = prof.value;
  out.revenue_error = rev.error;
  out.profit_error = prof.error;
  return out;
}

RevenueProfit revenue_profit(const AllocationMenu& menu, double tol) {
  RevenueProfit out;
  const auto& vd = menu.value_distribution();
  const auto& sd = menu.scale_distribution();
  const double lo = menu.exclusion();
  const double hi = vd.support().second;
  if (!(lo < hi)) return out;

  // Integrand over w at fixed s, weighted by the value density.
  auto over_w = [&](double s, bool profit, double inner_tol, double& err) {
    std::vector<double> breaks{menu.frontier(s)};
    const auto r = verify::integrate(
        [&](double w) {
          const double t = menu.transfer(w, s);
          const double c = profit ? menu.cost().contractible(menu.quality(w, s), s).total : 0.0;
          return (t - c) * vd.pdf(w);
        },
        lo, hi, breaks, {inner_tol, 4000});
    err = std::max(err, r.error);
    return r.value;
  };

  if (sd.is_point()) {
    double e1 = 0.0;
    double e2 = 0.0;
    out.revenue = over_w(sd.point_mass(), false, tol, e1);
    out.profit = over_w(sd.point_mass(), true, tol, e2);
    out.revenue_error = e1;
    out.profit_error = e2;
    return out;
  }

  const auto [slo, shi] = sd.support();
  std::vector<double> sbreaks;
  // Scale at which the fine-tuning frontier leaves through the top of the value support.
  const double e = menu.cost().params().task_exponent();
  const double phi_hi = menu.virtual_value_at(hi);
  if (phi_hi > 0.0) {
    const double level = menu.cost().package_marginal(menu.cost().threshold());
    sbreaks.push_back(std::pow(level / phi_hi, 1.0 / e));
  }
  const double width = shi - slo;
  for (const bool profit : {false, true}) {
    double inner_err = 0.0;
    const auto r = verify::integrate(
        [&](double s) { return over_w(s, profit, 0.1 * tol / width, inner_err) * sd.pdf(s); }, slo,
        shi, sbreaks, {0.5 * tol, 4000});
    const double err = r.error + inner_err * width;
    if (profit) {
      out.profit = r.value;
      out.profit_error = err;
    } else {
      out.revenue = r.value;
      out.revenue_error = err;
    }
  }
  return out;
}

verify::AuditReport assumption1_check(const ScaleSchedule& schedule, const verify::GridSpec& grid,
                                      double tol) {
  if (grid.axes.size() != 2) throw std::invalid_argument("assumption audit needs a (w, s) grid");
  verify::AuditReport report;
  report.name = "bounded-rent-increase";
  report.tolerance = tol;
  const auto ws = grid.axes[0].points();
  const auto ss = grid.axes[1].points();
  for (const double s : ss) {
    if (!(s > 0.0)) continue;
    const double breaks[] = {schedule.frontier ? schedule.frontier(s) : schedule.exclusion};
    for (const double w : ws) {
      double violation = 0.0;
      if (w > schedule.exclusion) {
        const auto integral = verify::integrate(
            [&](double k) { return schedule.quality_scale_derivative(k, s); }, schedule.exclusion,
            w, breaks, {1e-12, 4000});
        violation = s * integral.value - w * schedule.quality(w, s);
      }
      report.record(violation, {w, s});
    }
  }
  report.finish();
  return report;
}

verify::AuditReport assumption1_check(const AllocationMenu& menu, const verify::GridSpec& grid,
                                      double tol) {
  return assumption1_check(menu.schedule(), grid, tol);
}

}  // namespace tokenmenu
