#pragma once

#include <span>
#include <vector>

#include "rsde/path.hpp"

namespace rsde {

/// Riemann zeta function for real s > 1, absolute error below 1e-12.
double zeta(double s);

/// Constant of the Young–Loève p-variation bound, zeta(1/p + 1/q).
struct YoungBound {
  double p = 0.0;
  double q = 0.0;
  double constant = 0.0;
  bool valid = false;  // 1/p + 1/q > 1
};

YoungBound young_bound(double p, double q);

/// Exact Riemann–Stieltjes integral t -> sum_{a < u <= t} integrand_{u-} (driver_u - driver_{u-})
/// of a step integrand against a step driver over `window`. The result is 0 up to a, jumps
/// only where the driver does, and stays constant after b.
StepPath rs_integral(const MatrixStepPath& integrand, const StepPath& driver, Interval window);
StepPath rs_integral(const MatrixStepPath& integrand, const StepPath& driver);

struct YoungCheck {
  double lhs = 0.0;       // V_p of the integral over [a, b]
  double rhs = 0.0;       // C_{p,q} * V̄_q(integrand)_{[a,b)} * V_p(driver)_{[a,b]}
  double constant = 0.0;  // C_{p,q}
  bool pass = false;
};

YoungCheck young_bound_check(const MatrixStepPath& integrand, const StepPath& driver, double p, double q,
                             Interval window, double relative_slack = 1e-9);

/// Cumulative left-point sums S_0 = 0, S_{k+1} = S_k + M_k (z_{k+1} - z_k).
std::vector<Vector> grid_riemann_sum(std::span<const Matrix> integrand, std::span<const Vector> driver);

}  // namespace rsde
