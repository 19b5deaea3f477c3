#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rsde {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed time window [a, b]. A window with b < a is empty.
struct Interval {
  double a = 0.0;
  double b = 0.0;
};

/// Piecewise-constant càdlàg path in R^d.
///
/// The path takes value values[i] on [times[i], times[i+1]) and values[last]
/// from times[last] on. Grids start at 0 and are strictly increasing.
/// Consecutive equal values are kept so coupled paths stay aligned.
class StepPath {
 public:
  /// `values` is row-major, one row of `dim` entries per grid time.
  static StepPath make(std::vector<double> times, std::vector<double> values, std::size_t dim);
  static StepPath make(std::vector<double> times, const std::vector<Vector>& points);
  static StepPath scalar(std::vector<double> times, std::vector<double> values);
  static StepPath constant(const Vector& value);

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return dim_; }
  double horizon() const { return times_.back(); }

  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  double time(std::size_t i) const { return times_[i]; }

  Eigen::Map<const Vector> point(std::size_t i) const {
    return Eigen::Map<const Vector>(values_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
  }
  double value(std::size_t i, std::size_t component) const { return values_[i * dim_ + component]; }

  /// Index of the last grid time <= t.
  std::size_t index_at(double t) const;
  /// Index of the last grid time < t; requires t > 0.
  std::size_t index_before(double t) const;

  Vector eval(double t) const;
  Vector left_limit(double t) const;

  StepPath component(std::size_t i) const;
  /// Same càdlàg function sampled on `grid` (strictly increasing, starting at 0).
  StepPath resample(std::span<const double> grid) const;

  /// Increment x_{t_i} - x_{t_{i-1}} at grid index i >= 1.
  Vector jump(std::size_t i) const { return point(i) - point(i - 1); }

 private:
  StepPath(std::vector<double> times, std::vector<double> values, std::size_t dim)
      : times_(std::move(times)), values_(std::move(values)), dim_(dim) {}

  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t dim_ = 0;
};

/// Piecewise-constant path of d x d matrices; p-variation uses the operator norm.
class MatrixStepPath {
 public:
  static MatrixStepPath make(std::vector<double> times, const std::vector<Matrix>& values);
  static MatrixStepPath constant(const Matrix& value);

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return dim_; }
  double horizon() const { return times_.back(); }
  std::span<const double> times() const { return times_; }

  Eigen::Map<const Matrix> point(std::size_t i) const {
    auto d = static_cast<Eigen::Index>(dim_);
    return Eigen::Map<const Matrix>(values_.data() + i * dim_ * dim_, d, d);
  }

  std::size_t index_at(double t) const;
  std::size_t index_before(double t) const;
  Matrix eval(double t) const;
  Matrix left_limit(double t) const;
  MatrixStepPath resample(std::span<const double> grid) const;

 private:
  MatrixStepPath(std::vector<double> times, std::vector<double> values, std::size_t dim)
      : times_(std::move(times)), values_(std::move(values)), dim_(dim) {}

  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t dim_ = 0;
};

/// Validates a grid: nonempty, starts at 0, strictly increasing, finite.
void validate_grid(std::span<const double> times);

/// Sorted union of the given grids.
std::vector<double> merge_grids(std::span<const std::span<const double>> grids);

/// Resamples every path onto the union of their grids.
std::vector<StepPath> align(const std::vector<StepPath>& paths);

StepPath operator+(const StepPath& lhs, const StepPath& rhs);
StepPath operator-(const StepPath& lhs, const StepPath& rhs);
StepPath operator*(double factor, const StepPath& path);
/// Adds a constant vector to every value.
StepPath shifted(const StepPath& path, const Vector& offset);

/// v_p over [a, b]: supremum over subdivisions of sum |x_{t_i} - x_{t_{i-1}}|^p.
double p_variation(const StepPath& path, double p, Interval window);
double p_variation(const StepPath& path, double p);
double p_variation(const MatrixStepPath& path, double p, Interval window);
/// v_p over the half-open window [a, b).
double p_variation_before(const MatrixStepPath& path, double p, Interval window);

/// V_p = v_p^{1/p}.
double p_variation_seminorm(const StepPath& path, double p, Interval window);
double p_variation_seminorm(const StepPath& path, double p);

/// V̄_p = V_p + |x_a|.
double variation_norm(const StepPath& path, double p, Interval window);
double variation_norm(const StepPath& path, double p);
/// V̄_q over [a, b) with the operator norm.
double variation_norm_before(const MatrixStepPath& path, double q, Interval window);

/// Componentwise running supremum s -> sup_{u <= s} x_u.
StepPath running_max(const StepPath& path);

/// sup_{s,t in window} |x_t - x_s|.
double oscillation(const StepPath& path, Interval window);
/// sup_{t in window} |x_t|.
double sup_norm(const StepPath& path, Interval window);
double sup_norm(const StepPath& path);

/// Jump-adapted coarsening: t_0 = 0 and
/// t_{i+1} = min(t_i + mesh, first grid time after t_i with a jump larger than delta),
/// holding the value sampled at t_i. Times beyond `horizon` are dropped.
StepPath coarsen_jump_adapted(const StepPath& path, double delta, double mesh, double horizon);
StepPath coarsen_jump_adapted(const StepPath& path, double delta, double mesh);

}  // namespace rsde
