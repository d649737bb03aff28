#include "tokenmenu/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tokenmenu/quadrature.hpp"

namespace tokenmenu {

namespace {

// Mills ratio of the uniform-theta law as a function of L = -log(theta).
// Written with expm1 so the O(L^2) numerator keeps relative accuracy; the
// series takes over where even that cancels.
double uniform_theta_mills(double e, double theta) {
  if (theta <= 0.0) return 1.0 - e;
  const double r = (1.0 - e) / e;
  const double L = -std::log(theta);
  if (L < 1e-5) return 0.5 * L * (1.0 + L * (r / 6.0 - 2.0 / 3.0));
  const double num = e * std::expm1(-L / e) - std::expm1(-L);
  const double den = -std::expm1(-r * L);
  return num / den;
}

}  // namespace

ScalarDistribution ScalarDistribution::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("uniform distribution needs lo < hi");
  }
  return ScalarDistribution(Kind::Uniform, lo, hi);
}

ScalarDistribution ScalarDistribution::uniform_theta(double task_exponent) {
  if (!(task_exponent > 0.0 && task_exponent < 1.0)) {
    throw std::invalid_argument("task exponent must lie in (0, 1)");
  }
  ScalarDistribution d(Kind::UniformTheta, 0.0, 1.0);
  d.exponent_ = task_exponent;
  return d;
}

ScalarDistribution ScalarDistribution::tabulated(std::vector<double> grid, std::vector<double> pdf) {
  if (grid.size() != pdf.size()) throw std::invalid_argument("tabulated: size mismatch");
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (pdf[i] + pdf[i - 1]);
  }
  const double mass = cdf.empty() ? 0.0 : cdf.back();
  if (!(mass > 0.0)) throw std::invalid_argument("tabulated: density has no mass");
  for (auto& v : cdf) v /= mass;
  for (auto& v : pdf) v /= mass;
  return tabulated(std::move(grid), std::move(cdf), std::move(pdf));
}

ScalarDistribution ScalarDistribution::tabulated(std::vector<double> grid, std::vector<double> cdf,
                                                 std::vector<double> pdf) {
  if (grid.size() < 2 || grid.size() != pdf.size() || grid.size() != cdf.size()) {
    throw std::invalid_argument("tabulated: need >= 2 points and matching sizes");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(pdf[i]) || pdf[i] < 0.0) {
      throw std::invalid_argument("tabulated: grid and pdf must be finite, pdf >= 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("tabulated: grid must be strictly increasing");
    }
    if (i > 0 && cdf[i] < cdf[i - 1]) throw std::invalid_argument("tabulated: cdf must be monotone");
  }
  ScalarDistribution d(Kind::Tabulated, grid.front(), grid.back());
  d.grid_ = std::move(grid);
  d.pdf_ = std::move(pdf);
  d.cdf_ = std::move(cdf);
  return d;
}

ScalarDistribution ScalarDistribution::point(double at) {
  if (!std::isfinite(at)) throw std::invalid_argument("point mass must be finite");
  return ScalarDistribution(Kind::Degenerate, at, at);
}

std::size_t ScalarDistribution::cell(double t) const {
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const auto idx = static_cast<std::size_t>(it - grid_.begin());
  return std::clamp<std::size_t>(idx, 1, grid_.size() - 1) - 1;
}

double ScalarDistribution::cdf(double t) const {
  if (t <= lo_) return kind_ == Kind::Degenerate && t >= lo_ ? 1.0 : 0.0;
  if (t >= hi_) return 1.0;
  switch (kind_) {
    case Kind::Uniform:
      return (t - lo_) / (hi_ - lo_);
    case Kind::UniformTheta: {
      const double e = exponent_;
      const double p = std::pow(t, 1.0 / e);
      return p + (t - p) / (1.0 - e);
    }
    case Kind::Tabulated: {
      const std::size_t i = cell(t);
      const double h = grid_[i + 1] - grid_[i];
      const double u = (t - grid_[i]) / h;
      const double u2 = u * u;
      const double u3 = u2 * u;
      return (2 * u3 - 3 * u2 + 1) * cdf_[i] + (u3 - 2 * u2 + u) * h * pdf_[i] +
             (-2 * u3 + 3 * u2) * cdf_[i + 1] + (u3 - u2) * h * pdf_[i + 1];
    }
    case Kind::Degenerate:
      break;
  }
  return 1.0;
}

double ScalarDistribution::pdf(double t) const {
  if (kind_ == Kind::Degenerate) throw std::logic_error("point mass has no density");
  if (t < lo_ || t > hi_) return 0.0;
  switch (kind_) {
    case Kind::Uniform:
      return 1.0 / (hi_ - lo_);
    case Kind::UniformTheta:
      return -std::expm1((1.0 - exponent_) / exponent_ * std::log(t)) / (1.0 - exponent_);
    case Kind::Tabulated: {
      const std::size_t i = cell(t);
      const double u = (t - grid_[i]) / (grid_[i + 1] - grid_[i]);
      return (1.0 - u) * pdf_[i] + u * pdf_[i + 1];
    }
    case Kind::Degenerate:
      break;
  }
  return 0.0;
}

double ScalarDistribution::mills_ratio(double t) const {
  if (kind_ == Kind::Uniform && t >= lo_ && t <= hi_) return hi_ - t;
  if (kind_ == Kind::UniformTheta && t >= 0.0 && t <= 1.0) return uniform_theta_mills(exponent_, t);
  const double f = pdf(t);
  if (!(f > 0.0)) throw std::domain_error("mills ratio: zero density");
  return (1.0 - cdf(t)) / f;
}

double virtual_value(const ScalarDistribution& dist, double t) {
  return t - dist.mills_ratio(t);
}

ScalarDistribution tabulate(const std::function<double(double)>& cdf,
                            const std::function<double(double)>& pdf, double lo, double hi,
                            std::size_t count) {
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("tabulate: bad grid");
  std::vector<double> grid(count);
  std::vector<double> c(count);
  std::vector<double> f(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    c[i] = cdf(grid[i]);
    f[i] = pdf(grid[i]);
  }
  return ScalarDistribution::tabulated(std::move(grid), std::move(c), std::move(f));
}

ScalarDistribution theta_distribution(const ScalarDistribution& value,
                                      const ScalarDistribution& scale,
                                      const ProductionParams& params, std::size_t grid_points) {
  const double e = params.task_exponent();
  const auto [slo, shi] = scale.support();
  const auto [wlo, whi] = value.support();
  if (slo < 0.0 || shi > 1.0) throw std::invalid_argument("scale support must lie in [0, 1]");
  if (wlo < 0.0) throw std::invalid_argument("value support must be nonnegative");

  if (scale.is_point()) {
    const double k = std::pow(scale.point_mass(), e);
    if (!(k > 0.0)) throw std::invalid_argument("scale point mass must be > 0");
    if (k == 1.0) return value;
    if (value.is_point()) return ScalarDistribution::point(value.point_mass() * k);
    if (value.kind() == ScalarDistribution::Kind::Uniform) {
      return ScalarDistribution::uniform(wlo * k, whi * k);
    }
    return tabulate([&](double t) { return value.cdf(t / k); },
                    [&](double t) { return value.pdf(t / k) / k; }, wlo * k, whi * k,
                    grid_points);
  }
  if (value.kind() == ScalarDistribution::Kind::Uniform &&
      scale.kind() == ScalarDistribution::Kind::Uniform && wlo == 0.0 && whi == 1.0 &&
      slo == 0.0 && shi == 1.0) {
    return ScalarDistribution::uniform_theta(e);
  }
  if (value.is_point()) {
    const double w0 = value.point_mass();
    if (!(w0 > 0.0)) throw std::invalid_argument("value point mass must be > 0");
    return tabulate([&](double t) { return scale.cdf(std::pow(t / w0, 1.0 / e)); },
                    [&](double t) {
                      const double s = std::pow(t / w0, 1.0 / e);
                      return t > 0.0 ? scale.pdf(s) * s / (e * t) : 0.0;
                    },
                    w0 * std::pow(slo, e), w0 * std::pow(shi, e), grid_points);
  }

  const verify::QuadOptions quad{1e-11, 20000};
  const std::vector<double>& scale_grid = scale.grid();
  auto breaks = [&](double t) {
    std::vector<double> b(scale_grid.begin(), scale_grid.end());
    if (whi > 0.0) b.push_back(std::pow(t / whi, 1.0 / e));
    if (wlo > 0.0) b.push_back(std::pow(t / wlo, 1.0 / e));
    return b;
  };
  auto cdf = [&](double t) {
    if (t <= 0.0) return 0.0;
    const auto b = breaks(t);
    return verify::integrate(
               [&](double s) { return s > 0.0 ? value.cdf(t / std::pow(s, e)) * scale.pdf(s) : 0.0; },
               slo, shi, b, quad)
        .value;
  };
  auto pdf = [&](double t) {
    if (t <= 0.0) return 0.0;
    const auto b = breaks(t);
    return verify::integrate(
               [&](double s) {
                 if (s <= 0.0) return 0.0;
                 const double k = std::pow(s, e);
                 return value.pdf(t / k) / k * scale.pdf(s);
               },
               slo, shi, b, quad)
        .value;
  };
  return tabulate(cdf, pdf, wlo * std::pow(slo, e), whi * std::pow(shi, e), grid_points);
}

}  // namespace tokenmenu
