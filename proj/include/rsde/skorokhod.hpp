#pragma once

#include <string>
#include <vector>

#include "rsde/path.hpp"

namespace rsde {

/// Solution (x, k) of the Skorokhod problem for input y and lower barrier l.
/// All four paths live on one merged grid.
struct Reflection {
  StepPath x;
  StepPath k;
  StepPath y;
  StepPath l;
};

/// Componentwise reflection above `barrier`:
/// k_t = max(0, sup_{s<=t}(l_s - y_s)), x = y + k.
Reflection solve_sp(const StepPath& input, const StepPath& barrier);

/// Worst-case residuals of the reflection conditions on the grid.
struct ReflectionResiduals {
  double decomposition = 0.0;    // max |x - y - k|
  double barrier_breach = 0.0;   // max (l - x)^+
  double regulator_start = 0.0;  // |k_0|
  double regulator_drop = 0.0;   // max (k_{i-1} - k_i)^+
  double complementarity = 0.0;  // max_c |sum_i (x^c_i - l^c_i) dk^c_i|
  /// Scale used to make the residuals relative.
  double scale = 1.0;

  bool holds(double relative_tolerance) const;
};

ReflectionResiduals reflection_residuals(const Reflection& r);

/// One inequality lhs <= rhs, evaluated numerically.
struct EstimateRow {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;

  double margin() const { return rhs - lhs; }
};

struct EstimateReport {
  std::vector<EstimateRow> rows;

  bool all_pass() const;
  const EstimateRow& row(const std::string& id) const;
};

/// lhs <= rhs up to `relative_slack` times the larger magnitude.
bool within(double lhs, double rhs, double relative_slack);

/// Solves both problems and evaluates the Lipschitz estimates of the
/// reflection map in variation norm and in sup norm, plus the a-priori bounds
/// on each solution.
///
/// Rows:
///   pvar_state, pvar_regulator               variation-norm bounds on x - x', k - k'
///   pvar_state_split, pvar_regulator_split   same with start offsets kept separate
///   sup_state, sup_regulator                 sup-norm bounds, worst component
///   regulator_bound_1/2, state_bound_1/2     a-priori bounds on each solution
EstimateReport check_estimates(const StepPath& y, const StepPath& l, const StepPath& y2, const StepPath& l2,
                               double p, double relative_slack = 1e-9);

std::string report_to_csv(const EstimateReport& report);

}  // namespace rsde
