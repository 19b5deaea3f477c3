#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsde/path.hpp"
#include "rsde/skorokhod.hpp"

namespace rsde {

/// Declared regularity of a coefficient pair. Metadata only; never verified.
struct CoefficientInfo {
  std::string name;
  double linear_growth = 0.0;  // L with |f(x)| <= L (1 + |x|)
  double holder_order = 1.0;   // order of g, or of its derivative under local smoothness
  bool locally_smooth = true;  // f locally Lipschitz, grad g locally Hölder
};

struct Coefficients {
  std::function<Vector(const Vector&)> drift;      // f: R^d -> R^d, integrated against a
  std::function<Matrix(const Vector&)> diffusion;  // g: R^d -> d x d, integrated against z
  CoefficientInfo info;
};

/// Registry: zero, identity, geometric (g(x) = diag(x)), tanh (bounded smooth
/// mean reversion), rotation (2-d, coupled). Throws UnknownKind.
Coefficients make_coefficients(const std::string& preset, std::size_t dim);

/// x = x0 + int f(x_-) da + int g(x_-) dz + k, with x kept above l.
struct Problem {
  Vector x0;
  StepPath a;  // scalar finite-variation driver
  StepPath z;  // d-dimensional driver of finite p-variation
  StepPath l;  // d-dimensional lower barrier
  Coefficients coeffs;
  double p = 2.0;
  double horizon = 1.0;
};

/// Checks dimensions, x0 >= l_0 and the horizon.
void validate(const Problem& problem);

enum class Scheme { Uniform, Adaptive };

struct Diagnostics {
  double state_norm = 0.0;     // V̄_p(x) on [0, T]
  double regulator_sup = 0.0;  // sup |k|
  std::size_t steps = 0;
  double cauchy_gap = 0.0;     // refinement gap when produced by `solve`
};

struct Solution {
  Reflection reflection;  // x, k, reconstructed y and sampled l on the scheme grid
  Scheme scheme = Scheme::Uniform;
  std::size_t n = 0;
  Diagnostics diagnostics;
};

/// {k/n : k/n <= T}, with T appended when it is not a grid point.
std::vector<double> uniform_partition(double horizon, std::size_t n);

/// Jump-adapted partition: t_0 = 0, t_k = min(first time after t_{k-1} where a, z
/// or l jumps by more than 1/n, t_{k-1} + 1/n), truncated at the horizon.
/// Mesh points after a forced jump time s are s + j/n.
std::vector<double> adaptive_partition(const Problem& problem, std::size_t n,
                                       std::size_t max_steps = 10'000'000);

/// Euler recursion on an arbitrary partition starting at 0:
///   dy = f(x_k)(a_{k+1} - a_k) + g(x_k)(z_{k+1} - z_k)
///   x_{k+1} = max(x_k + dy, l_{k+1}) componentwise
Solution euler_on_partition(const Problem& problem, const std::vector<double>& partition, Scheme scheme,
                            std::size_t n);

Solution euler_uniform(const Problem& problem, std::size_t n);
Solution euler_adaptive(const Problem& problem, std::size_t n, std::size_t max_steps = 10'000'000);

/// max over the coarse grid of |x_c - x_f| and |k_c - k_f|, both evaluated as
/// step paths at the coarse grid times.
double refinement_gap(const Solution& coarse, const Solution& fine);

/// Adaptive scheme at n0, 2 n0, 4 n0, ... until the refinement gap drops below
/// tol. Returns the coarser solution of the converged pair. Throws NoConvergence
/// after `max_doublings` doublings.
Solution solve(const Problem& problem, double tol, std::size_t n0, std::size_t max_doublings = 14);

struct LadderRow {
  std::size_t n = 0;
  double gap = 0.0;  // gap to the previous rung; NaN on the first
  double seconds = 0.0;
};

/// Adaptive solutions at n0 * 2^j for j < levels and their successive gaps.
std::vector<LadderRow> convergence_ladder(const Problem& problem, std::size_t n0, std::size_t levels);

/// A-priori bounds on a scheme output:
///   regulator_bound: V̄_p(k) <= d sup|y| + d sup|l|
///   state_bound:     V̄_p(x) <= (d+1) V̄_p(y) + d sup|l|
EstimateReport a_priori_check(const Solution& solution, const Problem& problem, double relative_slack = 1e-9);

/// CSV with header `t,x1..xd,k1..kd` (prefixed by `replicate,` when a replicate
/// index is given) followed by `#`-prefixed key=value diagnostics.
std::string solution_to_csv(const Solution& solution, std::optional<std::uint64_t> replicate = std::nullopt,
                            bool header = true);

}  // namespace rsde
