#include "rsde/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rsde/error.hpp"

namespace rsde {
namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::NonFiniteValue, "path value is not finite");
    }
  }
}

std::size_t last_at_or_before(std::span<const double> times, double t) {
  if (t < 0.0 || std::isnan(t)) {
    fail(ErrorCode::NegativeTime, "negative time " + std::to_string(t));
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

std::size_t last_strictly_before(std::span<const double> times, double t) {
  if (t < 0.0 || std::isnan(t)) {
    fail(ErrorCode::NegativeTime, "negative time " + std::to_string(t));
  }
  if (t == 0.0) {
    return 0;
  }
  auto it = std::lower_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::InvalidP, "p-variation requires finite p >= 1, got " + std::to_string(p));
  }
}

void check_window(Interval window) {
  if (window.a < 0.0 || std::isnan(window.a) || std::isnan(window.b)) {
    fail(ErrorCode::NegativeTime, "window starts before 0");
  }
}

double power(double distance, double p) {
  if (p == 1.0) return distance;
  if (p == 2.0) return distance * distance;
  return std::pow(distance, p);
}

// Exact p-variation of the chain of values with indices first..last, which
// are the only values a step path takes on the window. The subdivision must
// start at `first` and end at `last`; best[j] is the largest sum over chains
// first -> ... -> j.
template <class Distance>
double chain_variation(std::size_t first, std::size_t last, double p, Distance&& distance) {
  if (last <= first) {
    return 0.0;
  }
  if (p == 1.0) {
    double total = 0.0;
    for (std::size_t j = first + 1; j <= last; ++j) {
      total += distance(j - 1, j);
    }
    return total;
  }
  std::vector<double> best(last - first + 1, 0.0);
  for (std::size_t j = first + 1; j <= last; ++j) {
    double top = 0.0;
    for (std::size_t i = first; i < j; ++i) {
      top = std::max(top, best[i - first] + power(distance(i, j), p));
    }
    best[j - first] = top;
  }
  return best.back();
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 1) {
    return std::abs(m(0, 0));
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double vector_variation(const StepPath& path, std::size_t first, std::size_t last, double p) {
  if (path.dim() == 1) {
    auto values = path.values();
    return chain_variation(first, last, p,
                           [&](std::size_t i, std::size_t j) { return std::abs(values[j] - values[i]); });
  }
  return chain_variation(first, last, p, [&](std::size_t i, std::size_t j) {
    return (path.point(j) - path.point(i)).norm();
  });
}

double matrix_variation(const MatrixStepPath& path, std::size_t first, std::size_t last, double p) {
  return chain_variation(first, last, p, [&](std::size_t i, std::size_t j) {
    return operator_norm(path.point(j) - path.point(i));
  });
}

}  // namespace

void validate_grid(std::span<const double> times) {
  if (times.empty()) {
    fail(ErrorCode::LengthMismatch, "grid is empty");
  }
  check_finite(times);
  if (times[0] != 0.0) {
    fail(ErrorCode::NonMonotoneGrid, "grid must start at 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i - 1] < times[i])) {
      fail(ErrorCode::NonMonotoneGrid, "grid is not strictly increasing at index " + std::to_string(i));
    }
  }
}

// ---------------------------------------------------------------------------
// StepPath

StepPath StepPath::make(std::vector<double> times, std::vector<double> values, std::size_t dim) {
  if (dim == 0) {
    fail(ErrorCode::DimensionMismatch, "path dimension must be at least 1");
  }
  if (values.size() != times.size() * dim) {
    fail(ErrorCode::LengthMismatch, "expected " + std::to_string(times.size() * dim) + " values, got " +
                                        std::to_string(values.size()));
  }
  validate_grid(times);
  check_finite(values);
  return StepPath(std::move(times), std::move(values), dim);
}

StepPath StepPath::make(std::vector<double> times, const std::vector<Vector>& points) {
  if (points.size() != times.size()) {
    fail(ErrorCode::LengthMismatch, "times and points differ in length");
  }
  if (points.empty()) {
    fail(ErrorCode::LengthMismatch, "path needs at least one point");
  }
  const auto dim = static_cast<std::size_t>(points.front().size());
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& point : points) {
    if (static_cast<std::size_t>(point.size()) != dim) {
      fail(ErrorCode::DimensionMismatch, "points have different dimensions");
    }
    flat.insert(flat.end(), point.data(), point.data() + dim);
  }
  return make(std::move(times), std::move(flat), dim);
}

StepPath StepPath::scalar(std::vector<double> times, std::vector<double> values) {
  return make(std::move(times), std::move(values), 1);
}

StepPath StepPath::constant(const Vector& value) {
  return make({0.0}, std::vector<double>(value.data(), value.data() + value.size()),
              static_cast<std::size_t>(value.size()));
}

std::size_t StepPath::index_at(double t) const { return last_at_or_before(times_, t); }

std::size_t StepPath::index_before(double t) const { return last_strictly_before(times_, t); }

Vector StepPath::eval(double t) const { return point(index_at(t)); }

Vector StepPath::left_limit(double t) const { return point(index_before(t)); }

StepPath StepPath::component(std::size_t i) const {
  if (i >= dim_) {
    fail(ErrorCode::DimensionMismatch, "component index out of range");
  }
  std::vector<double> out(times_.size());
  for (std::size_t k = 0; k < times_.size(); ++k) {
    out[k] = value(k, i);
  }
  return StepPath(times_, std::move(out), 1);
}

StepPath StepPath::resample(std::span<const double> grid) const {
  validate_grid(grid);
  std::vector<double> out;
  out.reserve(grid.size() * dim_);
  std::size_t src = 0;
  for (double t : grid) {
    while (src + 1 < times_.size() && times_[src + 1] <= t) {
      ++src;
    }
    out.insert(out.end(), values_.begin() + static_cast<std::ptrdiff_t>(src * dim_),
               values_.begin() + static_cast<std::ptrdiff_t>((src + 1) * dim_));
  }
  return StepPath(std::vector<double>(grid.begin(), grid.end()), std::move(out), dim_);
}

// ---------------------------------------------------------------------------
// MatrixStepPath

MatrixStepPath MatrixStepPath::make(std::vector<double> times, const std::vector<Matrix>& values) {
  if (values.size() != times.size()) {
    fail(ErrorCode::LengthMismatch, "times and matrices differ in length");
  }
  validate_grid(times);
  const auto dim = static_cast<std::size_t>(values.front().rows());
  std::vector<double> flat;
  flat.reserve(values.size() * dim * dim);
  for (const auto& m : values) {
    if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
      fail(ErrorCode::DimensionMismatch, "integrand values must be square and of one size");
    }
    flat.insert(flat.end(), m.data(), m.data() + dim * dim);
  }
  check_finite(flat);
  return MatrixStepPath(std::move(times), std::move(flat), dim);
}

MatrixStepPath MatrixStepPath::constant(const Matrix& value) { return make({0.0}, {value}); }

std::size_t MatrixStepPath::index_at(double t) const { return last_at_or_before(times_, t); }

std::size_t MatrixStepPath::index_before(double t) const { return last_strictly_before(times_, t); }

Matrix MatrixStepPath::eval(double t) const { return point(index_at(t)); }

Matrix MatrixStepPath::left_limit(double t) const { return point(index_before(t)); }

MatrixStepPath MatrixStepPath::resample(std::span<const double> grid) const {
  validate_grid(grid);
  const std::size_t block = dim_ * dim_;
  std::vector<double> out;
  out.reserve(grid.size() * block);
  std::size_t src = 0;
  for (double t : grid) {
    while (src + 1 < times_.size() && times_[src + 1] <= t) {
      ++src;
    }
    out.insert(out.end(), values_.begin() + static_cast<std::ptrdiff_t>(src * block),
               values_.begin() + static_cast<std::ptrdiff_t>((src + 1) * block));
  }
  return MatrixStepPath(std::vector<double>(grid.begin(), grid.end()), std::move(out), dim_);
}

// ---------------------------------------------------------------------------
// Path algebra

std::vector<double> merge_grids(std::span<const std::span<const double>> grids) {
  std::vector<double> merged;
  for (auto grid : grids) {
    merged.insert(merged.end(), grid.begin(), grid.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

std::vector<StepPath> align(const std::vector<StepPath>& paths) {
  std::vector<std::span<const double>> grids;
  grids.reserve(paths.size());
  for (const auto& path : paths) {
    grids.push_back(path.times());
  }
  const auto grid = merge_grids(grids);
  std::vector<StepPath> out;
  out.reserve(paths.size());
  for (const auto& path : paths) {
    if (path.size() == grid.size()) {
      out.push_back(path);
    } else {
      out.push_back(path.resample(grid));
    }
  }
  return out;
}

namespace {

template <class Op>
StepPath combine(const StepPath& lhs, const StepPath& rhs, Op op) {
  if (lhs.dim() != rhs.dim()) {
    fail(ErrorCode::DimensionMismatch, "paths have different dimensions");
  }
  auto aligned = align({lhs, rhs});
  auto a = aligned[0].values();
  auto b = aligned[1].values();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = op(a[i], b[i]);
  }
  auto times = aligned[0].times();
  return StepPath::make(std::vector<double>(times.begin(), times.end()), std::move(out), lhs.dim());
}

}  // namespace

StepPath operator+(const StepPath& lhs, const StepPath& rhs) {
  return combine(lhs, rhs, [](double a, double b) { return a + b; });
}

StepPath operator-(const StepPath& lhs, const StepPath& rhs) {
  return combine(lhs, rhs, [](double a, double b) { return a - b; });
}

StepPath operator*(double factor, const StepPath& path) {
  std::vector<double> out(path.values().begin(), path.values().end());
  for (double& v : out) {
    v *= factor;
  }
  return StepPath::make(std::vector<double>(path.times().begin(), path.times().end()), std::move(out),
                        path.dim());
}

StepPath shifted(const StepPath& path, const Vector& offset) {
  if (static_cast<std::size_t>(offset.size()) != path.dim()) {
    fail(ErrorCode::DimensionMismatch, "offset dimension differs from path dimension");
  }
  std::vector<double> out(path.values().begin(), path.values().end());
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t c = 0; c < path.dim(); ++c) {
      out[i * path.dim() + c] += offset(static_cast<Eigen::Index>(c));
    }
  }
  return StepPath::make(std::vector<double>(path.times().begin(), path.times().end()), std::move(out),
                        path.dim());
}

// ---------------------------------------------------------------------------
// Variation functionals

double p_variation(const StepPath& path, double p, Interval window) {
  check_p(p);
  check_window(window);
  if (window.b < window.a) {
    return 0.0;
  }
  return vector_variation(path, path.index_at(window.a), path.index_at(window.b), p);
}

double p_variation(const StepPath& path, double p) { return p_variation(path, p, {0.0, path.horizon()}); }

double p_variation(const MatrixStepPath& path, double p, Interval window) {
  check_p(p);
  check_window(window);
  if (window.b < window.a) {
    return 0.0;
  }
  return matrix_variation(path, path.index_at(window.a), path.index_at(window.b), p);
}

double p_variation_before(const MatrixStepPath& path, double p, Interval window) {
  check_p(p);
  check_window(window);
  if (window.b <= window.a) {
    return 0.0;
  }
  return matrix_variation(path, path.index_at(window.a), path.index_before(window.b), p);
}

double p_variation_seminorm(const StepPath& path, double p, Interval window) {
  const double v = p_variation(path, p, window);
  return p == 1.0 ? v : std::pow(v, 1.0 / p);
}

double p_variation_seminorm(const StepPath& path, double p) {
  return p_variation_seminorm(path, p, {0.0, path.horizon()});
}

double variation_norm(const StepPath& path, double p, Interval window) {
  const double seminorm = p_variation_seminorm(path, p, window);
  if (window.b < window.a) {
    return seminorm;
  }
  return seminorm + path.eval(window.a).norm();
}

double variation_norm(const StepPath& path, double p) { return variation_norm(path, p, {0.0, path.horizon()}); }

double variation_norm_before(const MatrixStepPath& path, double q, Interval window) {
  const double v = p_variation_before(path, q, window);
  const double seminorm = q == 1.0 ? v : std::pow(v, 1.0 / q);
  return seminorm + operator_norm(path.eval(window.a));
}

StepPath running_max(const StepPath& path) {
  std::vector<double> out(path.values().begin(), path.values().end());
  const std::size_t d = path.dim();
  for (std::size_t i = 1; i < path.size(); ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      out[i * d + c] = std::max(out[i * d + c], out[(i - 1) * d + c]);
    }
  }
  return StepPath::make(std::vector<double>(path.times().begin(), path.times().end()), std::move(out), d);
}

double oscillation(const StepPath& path, Interval window) {
  check_window(window);
  if (window.b < window.a) {
    return 0.0;
  }
  const std::size_t first = path.index_at(window.a);
  const std::size_t last = path.index_at(window.b);
  if (path.dim() == 1) {
    auto values = path.values();
    auto [lo, hi] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(first),
                                        values.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    return *hi - *lo;
  }
  double top = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    for (std::size_t j = i + 1; j <= last; ++j) {
      top = std::max(top, (path.point(j) - path.point(i)).norm());
    }
  }
  return top;
}

double sup_norm(const StepPath& path, Interval window) {
  check_window(window);
  if (window.b < window.a) {
    return 0.0;
  }
  double top = 0.0;
  for (std::size_t i = path.index_at(window.a); i <= path.index_at(window.b); ++i) {
    top = std::max(top, path.point(i).norm());
  }
  return top;
}

double sup_norm(const StepPath& path) { return sup_norm(path, {0.0, path.horizon()}); }

StepPath coarsen_jump_adapted(const StepPath& path, double delta, double mesh, double horizon) {
  if (!(delta > 0.0) || !(mesh > 0.0) || !std::isfinite(mesh) || !(horizon >= 0.0)) {
    fail(ErrorCode::InvalidParameter, "coarsening needs delta > 0, mesh > 0 and horizon >= 0");
  }
  if (horizon / mesh > 1e8) {
    fail(ErrorCode::InvalidParameter, "mesh too fine for the horizon");
  }
  std::vector<std::size_t> large_jumps;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path.jump(i).norm() > delta) {
      large_jumps.push_back(i);
    }
  }
  std::vector<double> times{0.0};
  std::vector<double> values(path.values().begin(), path.values().begin() + static_cast<std::ptrdiff_t>(path.dim()));
  auto next_large = large_jumps.begin();
  double t = 0.0;
  while (true) {
    while (next_large != large_jumps.end() && path.time(*next_large) <= t) {
      ++next_large;
    }
    double next = t + mesh;
    if (next_large != large_jumps.end()) {
      next = std::min(next, path.time(*next_large));
    }
    if (next > horizon) {
      break;
    }
    times.push_back(next);
    const std::size_t src = path.index_at(next);
    auto point = path.point(src);
    values.insert(values.end(), point.data(), point.data() + path.dim());
    t = next;
  }
  return StepPath::make(std::move(times), std::move(values), path.dim());
}

StepPath coarsen_jump_adapted(const StepPath& path, double delta, double mesh) {
  return coarsen_jump_adapted(path, delta, mesh, path.horizon());
}

}  // namespace rsde
