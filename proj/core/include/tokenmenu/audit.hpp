#pragma once

// Brute-force incentive audits. Menus are sampled into rows on a grid; every
// row is checked against every other row's item, and value-scale menus are
// additionally probed off the grid at the scale-misreport candidates.

#include <functional>
#include <vector>

#include "tokenmenu/binary.hpp"
#include "tokenmenu/report.hpp"
#include "tokenmenu/screening.hpp"

namespace tokenmenu::verify {

struct PackageRow {
  double theta = 0.0;
  double quality = 0.0;
  double transfer = 0.0;
};

struct AllocationRow {
  double value = 0.0;
  double scale = 1.0;
  double quality = 0.0;
  double transfer = 0.0;
};

using AllocationLookup = std::function<AllocationRow(double w, double s)>;

std::vector<PackageRow> package_rows(const PackageMenu& menu, const GridAxis& theta);
std::vector<AllocationRow> allocation_rows(const AllocationMenu& menu, const GridSpec& grid);
AllocationLookup allocation_lookup(const AllocationMenu& menu);

// Net utility of type (w, s) from an item built for scale s~: a buyer with
// fewer tasks than the item covers uses only its share of the quality.
double allocation_utility(double w, double s, const AllocationRow& item);

AuditReport ic_audit(const std::vector<PackageRow>& rows, double tol = 1e-6);
AuditReport ir_audit(const std::vector<PackageRow>& rows, double tol = 1e-6);

// off_grid may be empty; when set, each type also tries reports
// (w s / s~ * (1 + d), s~) for every grid scale s~ > s and a few small d.
AuditReport ic_audit(const std::vector<AllocationRow>& rows, const AllocationLookup& off_grid,
                     double tol = 1e-6);
AuditReport ir_audit(const std::vector<AllocationRow>& rows, double tol = 1e-6);

AuditReport ic_audit(const BinaryMenu& menu, const ProductionParams& params, double tol = 1e-6);
AuditReport ir_audit(const BinaryMenu& menu, const ProductionParams& params, double tol = 1e-6);

}  // namespace tokenmenu::verify
