#include "tokenmenu/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tokenmenu {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

ProductionParams::ProductionParams(double alpha, double beta, double gamma, double base)
    : alpha_(alpha), beta_(beta), gamma_(gamma), base_(base) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  require_positive(base, "base");
  if (alpha + beta + gamma >= 1.0) {
    throw std::invalid_argument("alpha + beta + gamma must be < 1");
  }
}

CostRates::CostRates(double cx, double cy, double cz) : cx_(cx), cy_(cy), cz_(cz) {
  require_positive(cx, "cx");
  require_positive(cy, "cy");
  require_positive(cz, "cz");
}

CostRates CostRates::scaled(double factor) const {
  return CostRates(cx_ * factor, cy_ * factor, cz_ * factor);
}

TaskProfile::TaskProfile(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("task profile needs at least one segment");
  double total = 0.0;
  for (const auto& seg : segments_) {
    if (!std::isfinite(seg.length) || seg.length <= 0.0) {
      throw std::invalid_argument("segment lengths must be finite and > 0");
    }
    if (!std::isfinite(seg.value) || seg.value < 0.0) {
      throw std::invalid_argument("segment values must be finite and >= 0");
    }
    total += seg.length;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("segment lengths must sum to 1");
  }
}

TaskProfile TaskProfile::constant(double value) { return TaskProfile({{1.0, value}}); }

TaskProfile TaskProfile::step(double value, double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
  if (scale == 1.0) return constant(value);
  return TaskProfile({{scale, value}, {1.0 - scale, 0.0}});
}

bool TaskProfile::all_zero() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.value == 0.0; });
}

TaskProfile TaskProfile::scaled(double factor) const {
  if (!(factor >= 0.0)) throw std::invalid_argument("profile scale factor must be >= 0");
  auto out = segments_;
  for (auto& seg : out) seg.value *= factor;
  return TaskProfile(std::move(out));
}

std::pair<TaskProfile, TaskProfile> common_refinement(const TaskProfile& a, const TaskProfile& b) {
  std::vector<Segment> ra;
  std::vector<Segment> rb;
  std::size_t i = 0;
  std::size_t j = 0;
  double left_a = a[0].length;
  double left_b = b[0].length;
  constexpr double kMerge = 1e-14;
  while (i < a.size() && j < b.size()) {
    const double len = std::min(left_a, left_b);
    if (len > kMerge) {
      ra.push_back({len, a[i].value});
      rb.push_back({len, b[j].value});
    }
    left_a -= len;
    left_b -= len;
    if (left_a <= kMerge && ++i < a.size()) left_a += a[i].length;
    if (left_b <= kMerge && ++j < b.size()) left_b += b[j].length;
  }
  // Rounding residue goes to the last segment so lengths still sum to 1.
  double total = 0.0;
  for (const auto& s : ra) total += s.length;
  ra.back().length += 1.0 - total;
  rb.back().length = ra.back().length;
  return {TaskProfile(std::move(ra)), TaskProfile(std::move(rb))};
}

ValueScaleType::ValueScaleType(double value, double scale) : value_(value), scale_(scale) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("value must lie in [0, 1]");
  if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
}

double precision(const ProductionParams& params, double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw std::invalid_argument("precision: arguments must be finite");
  }
  if (x < 0.0 || y < 0.0 || z < 0.0) throw std::invalid_argument("precision: negative tokens");
  if (x == 0.0 || y == 0.0) return 0.0;
  return std::pow(x, params.alpha()) * std::pow(y, params.beta()) *
         std::pow(params.base() + z, params.gamma());
}

RepresentativeType representative_type(const TaskProfile& profile, const ProductionParams& params) {
  const double e = params.task_exponent();
  double sum = 0.0;
  for (const auto& seg : profile.segments()) {
    if (seg.value > 0.0) sum += seg.length * std::pow(seg.value, 1.0 / e);
  }
  return {sum > 0.0 ? std::pow(sum, e) : 0.0};
}

RepresentativeType value_scale_theta(const ValueScaleType& type, const ProductionParams& params) {
  return {type.value() * std::pow(type.scale(), params.task_exponent())};
}

double efficient_finetune_threshold(const ProductionParams& params, const CostRates& costs) {
  const double a = params.alpha();
  const double b = params.beta();
  const double g = params.gamma();
  return std::pow(params.base(), 1.0 - a - b - g) * std::pow(costs.cx() / a, a) *
         std::pow(costs.cy() / b, b) * std::pow(costs.cz() / g, 1.0 - a - b);
}

}  // namespace tokenmenu
