#pragma once

// Report and grid types shared by every audit.

#include <cstddef>
#include <string>
#include <vector>

namespace tokenmenu::verify {

struct AuditReport {
  std::string name;
  double max_violation = 0.0;
  std::vector<double> location;  // index coordinates of the worst sample
  std::size_t samples = 0;
  double tolerance = 1e-6;
  bool passed = true;

  // Keeps the largest violation seen; ties keep the first location.
  void record(double violation, std::vector<double> where);
  // Sets passed from max_violation and tolerance.
  void finish();
  // Combines two reports over disjoint samples.
  void merge(const AuditReport& other);
};

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 2;
  std::vector<double> breakpoints;

  // Evenly spaced points plus each breakpoint and a geometric cluster of
  // points on both sides of it.
  std::vector<double> points() const;
};

struct GridSpec {
  std::vector<GridAxis> axes;
};

}  // namespace tokenmenu::verify
