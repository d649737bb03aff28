#include "tokenmenu/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tokenmenu::verify {

void AuditReport::record(double violation, std::vector<double> where) {
  if (samples == 0 || violation > max_violation) {
    max_violation = violation;
    location = std::move(where);
  }
  ++samples;
}

void AuditReport::finish() { passed = max_violation <= tolerance; }

void AuditReport::merge(const AuditReport& other) {
  if (other.samples > 0 && (samples == 0 || other.max_violation > max_violation)) {
    max_violation = other.max_violation;
    location = other.location;
  }
  samples += other.samples;
  tolerance = std::min(tolerance, other.tolerance);
  finish();
}

std::vector<double> GridAxis::points() const {
  if (count < 2) throw std::invalid_argument("grid axis needs count >= 2");
  if (!(lo < hi)) throw std::invalid_argument("grid axis needs lo < hi");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  }
  const double width = hi - lo;
  for (const double bp : breakpoints) {
    if (bp < lo || bp > hi) throw std::invalid_argument("grid breakpoint outside the axis");
    out.push_back(bp);
    for (const double d : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
      if (bp - d * width >= lo) out.push_back(bp - d * width);
      if (bp + d * width <= hi) out.push_back(bp + d * width);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PackageRow> package_rows(const PackageMenu& menu, const GridAxis& theta) {
  std::vector<PackageRow> rows;
  for (const double t : theta.points()) {
    const PackageItem item = menu.item(t);
    rows.push_back({t, item.quality, item.transfer});
  }
  return rows;
}

std::vector<AllocationRow> allocation_rows(const AllocationMenu& menu, const GridSpec& grid) {
  if (grid.axes.size() != 2) throw std::invalid_argument("allocation rows need a (w, s) grid");
  const auto ws = grid.axes[0].points();
  const auto ss = grid.axes[1].points();
  std::vector<AllocationRow> rows;
  rows.reserve(ws.size() * ss.size());
  for (const double s : ss) {
    if (!(s > 0.0)) throw std::invalid_argument("allocation grid scales must be > 0");
    for (const double w : ws) {
      const AllocationItem item = menu.item(w, s);
      rows.push_back({w, s, item.quality, item.transfer});
    }
  }
  return rows;
}

AllocationLookup allocation_lookup(const AllocationMenu& menu) {
  return [&menu](double w, double s) {
    const AllocationItem item = menu.item(w, s);
    return AllocationRow{w, s, item.quality, item.transfer};
  };
}

double allocation_utility(double w, double s, const AllocationRow& item) {
  return w * item.quality * std::min(1.0, s / item.scale) - item.transfer;
}

AuditReport ic_audit(const std::vector<PackageRow>& rows, double tol) {
  AuditReport report;
  report.name = "incentive-compatibility";
  report.tolerance = tol;
  for (const auto& type : rows) {
    const double own = type.theta * type.quality - type.transfer;
    double best = -std::numeric_limits<double>::infinity();
    const PackageRow* arg = nullptr;
    for (const auto& other : rows) {
      const double u = type.theta * other.quality - other.transfer;
      if (u > best) {
        best = u;
        arg = &other;
      }
    }
    report.record(best - own, {type.theta, arg->theta});
  }
  report.finish();
  return report;
}

AuditReport ir_audit(const std::vector<PackageRow>& rows, double tol) {
  AuditReport report;
  report.name = "individual-rationality";
  report.tolerance = tol;
  for (const auto& type : rows) {
    // Excluded types must get exactly nothing and pay exactly nothing.
    const double v = type.quality == 0.0 ? std::abs(type.transfer)
                                         : type.transfer - type.theta * type.quality;
    report.record(v, {type.theta});
  }
  report.finish();
  return report;
}

AuditReport ic_audit(const std::vector<AllocationRow>& rows, const AllocationLookup& off_grid,
                     double tol) {
  AuditReport report;
  report.name = "incentive-compatibility";
  report.tolerance = tol;
  if (rows.empty()) return report;

  std::vector<double> scales;
  double w_lo = rows.front().value;
  double w_hi = rows.front().value;
  for (const auto& r : rows) {
    scales.push_back(r.scale);
    w_lo = std::min(w_lo, r.value);
    w_hi = std::max(w_hi, r.value);
  }
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

  for (const auto& type : rows) {
    const double own = allocation_utility(type.value, type.scale, type);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> where;
    for (const auto& other : rows) {
      const double u = allocation_utility(type.value, type.scale, other);
      if (u > best) {
        best = u;
        where = {type.value, type.scale, other.value, other.scale};
      }
    }
    if (off_grid) {
      // Overstating scale while shading value so the rent looks the same.
      for (const double s_rep : scales) {
        if (s_rep <= type.scale) continue;
        const double w_star = type.value * type.scale / s_rep;
        for (const double d : {0.0, -0.01, 0.01}) {
          const double w_rep = std::clamp(w_star * (1.0 + d), w_lo, w_hi);
          const AllocationRow item = off_grid(w_rep, s_rep);
          const double u = allocation_utility(type.value, type.scale, item);
          if (u > best) {
            best = u;
            where = {type.value, type.scale, w_rep, s_rep};
          }
        }
      }
    }
    report.record(best - own, std::move(where));
  }
  report.finish();
  return report;
}

AuditReport ir_audit(const std::vector<AllocationRow>& rows, double tol) {
  AuditReport report;
  report.name = "individual-rationality";
  report.tolerance = tol;
  for (const auto& type : rows) {
    const double v = type.quality == 0.0 ? std::abs(type.transfer)
                                         : -allocation_utility(type.value, type.scale, type);
    report.record(v, {type.value, type.scale});
  }
  report.finish();
  return report;
}

AuditReport ic_audit(const BinaryMenu& menu, const ProductionParams& params, double tol) {
  AuditReport report;
  report.name = "incentive-compatibility";
  report.tolerance = tol;
  const auto& hi = menu.high_item;
  const auto& lo = menu.low_item;
  const double hh = gross_value(menu.high, hi.plan, params) - hi.transfer;
  const double hl = gross_value(menu.high, lo.plan, params) - lo.transfer;
  const double ll = gross_value(menu.low, lo.plan, params) - lo.transfer;
  const double lh = gross_value(menu.low, hi.plan, params) - hi.transfer;
  report.record(hl - hh, {1.0, 0.0});
  report.record(lh - ll, {0.0, 1.0});
  report.finish();
  return report;
}

AuditReport ir_audit(const BinaryMenu& menu, const ProductionParams& params, double tol) {
  AuditReport report;
  report.name = "individual-rationality";
  report.tolerance = tol;
  report.record(menu.high_item.transfer - gross_value(menu.high, menu.high_item.plan, params), {1.0});
  report.record(menu.low_item.transfer - gross_value(menu.low, menu.low_item.plan, params), {0.0});
  report.finish();
  return report;
}

}  // namespace tokenmenu::verify
