#include "rsde/young.hpp"

#include <array>
#include <cmath>

#include "rsde/error.hpp"
#include "rsde/skorokhod.hpp"

namespace rsde {

double zeta(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    fail(ErrorCode::DomainError, "zeta needs s > 1, got " + std::to_string(s));
  }
  // Partial sum up to N-1, then Euler–Maclaurin for the tail starting at N.
  constexpr int N = 32;
  // B_{2k} / (2k)!
  constexpr std::array<double, 6> kCoefficients = {
      1.0 / 12.0,                 // B2/2!
      -1.0 / 720.0,               // B4/4!
      1.0 / 30240.0,              // B6/6!
      -1.0 / 1209600.0,           // B8/8!
      1.0 / 47900160.0,           // B10/10!
      -691.0 / 1307674368000.0};  // B12/12!
  double sum = 0.0;
  for (int n = N - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -s);
  }
  const double big_n = N;
  sum += std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);
  // Rising factorial s (s+1) ... (s+2k-2) times N^{-s-2k+1}.
  double rising = s;
  double power = std::pow(big_n, -s - 1.0);
  for (std::size_t k = 0; k < kCoefficients.size(); ++k) {
    sum += kCoefficients[k] * rising * power;
    rising *= (s + 2.0 * static_cast<double>(k) + 1.0) * (s + 2.0 * static_cast<double>(k) + 2.0);
    power /= big_n * big_n;
  }
  return sum;
}

YoungBound young_bound(double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    fail(ErrorCode::InvalidExponents, "Young exponents must satisfy p, q >= 1");
  }
  YoungBound bound{p, q, 0.0, false};
  const double theta = 1.0 / p + 1.0 / q;
  if (theta > 1.0) {
    bound.valid = true;
    bound.constant = zeta(theta);
  }
  return bound;
}

StepPath rs_integral(const MatrixStepPath& integrand, const StepPath& driver, Interval window) {
  if (integrand.dim() != driver.dim()) {
    fail(ErrorCode::DimensionMismatch, "integrand and driver dimensions differ");
  }
  if (window.a < 0.0) {
    fail(ErrorCode::NegativeTime, "window starts before 0");
  }
  const std::size_t d = driver.dim();
  std::vector<double> times{0.0};
  std::vector<double> values(d, 0.0);
  Vector total = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < driver.size(); ++i) {
    const double u = driver.time(i);
    if (u <= window.a) continue;
    if (u > window.b) break;
    total += integrand.left_limit(u) * driver.jump(i);
    times.push_back(u);
    values.insert(values.end(), total.data(), total.data() + d);
  }
  return StepPath::make(std::move(times), std::move(values), d);
}

StepPath rs_integral(const MatrixStepPath& integrand, const StepPath& driver) {
  return rs_integral(integrand, driver, {0.0, std::max(integrand.horizon(), driver.horizon())});
}

YoungCheck young_bound_check(const MatrixStepPath& integrand, const StepPath& driver, double p, double q,
                             Interval window, double relative_slack) {
  const YoungBound bound = young_bound(p, q);
  if (!bound.valid) {
    fail(ErrorCode::InvalidExponents, "Young bound needs 1/p + 1/q > 1");
  }
  const StepPath integral = rs_integral(integrand, driver, window);
  YoungCheck check;
  check.constant = bound.constant;
  check.lhs = p_variation_seminorm(integral, p, window);
  check.rhs = bound.constant * variation_norm_before(integrand, q, window) * p_variation_seminorm(driver, p, window);
  check.pass = within(check.lhs, check.rhs, relative_slack);
  return check;
}

std::vector<Vector> grid_riemann_sum(std::span<const Matrix> integrand, std::span<const Vector> driver) {
  if (integrand.size() != driver.size()) {
    fail(ErrorCode::LengthMismatch, "integrand and driver sample counts differ");
  }
  std::vector<Vector> sums;
  if (driver.empty()) {
    return sums;
  }
  sums.reserve(driver.size());
  sums.push_back(Vector::Zero(driver[0].size()));
  for (std::size_t k = 0; k + 1 < driver.size(); ++k) {
    sums.push_back(sums.back() + integrand[k] * (driver[k + 1] - driver[k]));
  }
  return sums;
}

}  // namespace rsde
