#pragma once

// Primitive economic objects shared by every module.
//
// A buyer processes a unit measure of tasks. Each task i receives input
// tokens x_i and output tokens y_i; fine-tuning tokens z are shared across
// all tasks. Precision on a task is the Cobb-Douglas technology
//
//     v(x, y, z) = x^alpha * y^beta * (base + z)^gamma.
//
// A buyer type is a willingness-to-pay profile over tasks, stored as a
// piecewise-constant list of (length, value) segments. All objects validate
// their invariants on construction and are immutable afterwards.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tokenmenu {

class ProductionParams {
 public:
  ProductionParams(double alpha, double beta, double gamma, double base);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double base() const { return base_; }

  // alpha + beta: returns to per-task tokens.
  double io_share() const { return alpha_ + beta_; }
  // 1 - alpha - beta: exponent of the CES aggregation over tasks.
  double task_exponent() const { return 1.0 - alpha_ - beta_; }
  // alpha + beta + gamma.
  double returns() const { return alpha_ + beta_ + gamma_; }

  friend bool operator==(const ProductionParams&, const ProductionParams&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double base_;
};

class CostRates {
 public:
  CostRates(double cx, double cy, double cz);

  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double cz() const { return cz_; }

  // Every rate multiplied by a positive factor (linear prices at a common markup).
  CostRates scaled(double factor) const;

  friend bool operator==(const CostRates&, const CostRates&) = default;

 private:
  double cx_;
  double cy_;
  double cz_;
};

struct Segment {
  double length;
  double value;

  friend bool operator==(const Segment&, const Segment&) = default;
};

class TaskProfile {
 public:
  explicit TaskProfile(std::vector<Segment> segments);

  static TaskProfile constant(double value);
  // Value w on the first s tasks, zero on the rest.
  static TaskProfile step(double value, double scale);

  std::span<const Segment> segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }

  bool all_zero() const;
  // Same segmentation, values multiplied by factor >= 0.
  TaskProfile scaled(double factor) const;

  friend bool operator==(const TaskProfile&, const TaskProfile&) = default;

 private:
  std::vector<Segment> segments_;
};

// Re-expresses both profiles on the union of their breakpoints so that
// segment k covers the same tasks in each.
std::pair<TaskProfile, TaskProfile> common_refinement(const TaskProfile& a,
                                                      const TaskProfile& b);

class ValueScaleType {
 public:
  ValueScaleType(double value, double scale);

  double value() const { return value_; }
  double scale() const { return scale_; }
  TaskProfile profile() const { return TaskProfile::step(value_, scale_); }

 private:
  double value_;
  double scale_;
};

struct RepresentativeType {
  double theta = 0.0;
};

double precision(const ProductionParams& params, double x, double y, double z);

// theta = (sum_k length_k * value_k^{1/(1-alpha-beta)})^{1-alpha-beta}
RepresentativeType representative_type(const TaskProfile& profile,
                                       const ProductionParams& params);

// theta = w * s^{1-alpha-beta}
RepresentativeType value_scale_theta(const ValueScaleType& type,
                                     const ProductionParams& params);

// Representative type above which the planner fine-tunes.
double efficient_finetune_threshold(const ProductionParams& params, const CostRates& costs);

}  // namespace tokenmenu
