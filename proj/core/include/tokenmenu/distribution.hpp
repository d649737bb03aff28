#pragma once

// One-dimensional type distributions: uniform, the analytic theta law of
// independent uniform value and scale, tabulated densities, and point masses.

#include <functional>
#include <utility>
#include <vector>

#include "tokenmenu/model.hpp"

namespace tokenmenu {

class ScalarDistribution {
 public:
  enum class Kind { Uniform, UniformTheta, Tabulated, Degenerate };

  static ScalarDistribution uniform(double lo = 0.0, double hi = 1.0);
  // Law of theta = w * s^e with w, s independent uniform on [0, 1].
  static ScalarDistribution uniform_theta(double task_exponent);
  // pdf samples on an increasing grid; the cdf is built by Hermite
  // integration of the linear pdf and the result is normalized to mass 1.
  static ScalarDistribution tabulated(std::vector<double> grid, std::vector<double> pdf);
  // Exact cdf and pdf samples (e.g. from quadrature); no renormalization.
  static ScalarDistribution tabulated(std::vector<double> grid, std::vector<double> cdf,
                                      std::vector<double> pdf);
  static ScalarDistribution point(double at);

  Kind kind() const { return kind_; }
  std::pair<double, double> support() const { return {lo_, hi_}; }
  bool is_point() const { return kind_ == Kind::Degenerate; }
  double point_mass() const { return lo_; }
  double task_exponent() const { return exponent_; }

  double cdf(double t) const;
  // Throws std::logic_error for point masses.
  double pdf(double t) const;
  // (1 - F(t)) / f(t). Throws std::domain_error where the density is zero.
  double mills_ratio(double t) const;

  // Raw table (empty unless tabulated).
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& pdf_table() const { return pdf_; }
  const std::vector<double>& cdf_table() const { return cdf_; }

 private:
  ScalarDistribution(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}
  std::size_t cell(double t) const;

  Kind kind_;
  double lo_;
  double hi_;
  double exponent_ = 0.0;
  std::vector<double> grid_;
  std::vector<double> pdf_;
  std::vector<double> cdf_;
};

// t - (1 - F(t)) / f(t)
double virtual_value(const ScalarDistribution& dist, double t);

// Samples cdf and pdf callables on `count` evenly spaced points.
ScalarDistribution tabulate(const std::function<double(double)>& cdf,
                            const std::function<double(double)>& pdf, double lo, double hi,
                            std::size_t count);

// Law of theta = w * s^{1-alpha-beta} for independent w and s. Analytic when
// both inputs are uniform on [0, 1]; the value law itself when s is a point
// mass at 1; tabulated by quadrature otherwise.
ScalarDistribution theta_distribution(const ScalarDistribution& value,
                                      const ScalarDistribution& scale,
                                      const ProductionParams& params,
                                      std::size_t grid_points = 2049);

}  // namespace tokenmenu
