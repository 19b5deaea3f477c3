#include "rsde/sde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsde/error.hpp"
#include "rsde/path_io.hpp"

namespace rsde {
namespace {

// Exact V̄_p of the state is O(m^2); larger partitions report NaN.
constexpr std::size_t kMaxDiagnosticPoints = 16384;

}  // namespace

Coefficients make_coefficients(const std::string& preset, std::size_t dim) {
  if (dim == 0) {
    fail(ErrorCode::DimensionMismatch, "coefficient dimension must be at least 1");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  if (preset == "zero") {
    return {[d](const Vector&) { return Vector::Zero(d); }, [d](const Vector&) { return Matrix::Zero(d, d); },
            {"zero", 0.0, 1.0, true}};
  }
  if (preset == "identity") {
    return {[d](const Vector&) { return Vector::Zero(d); }, [d](const Vector&) { return Matrix::Identity(d, d); },
            {"identity", 0.0, 1.0, true}};
  }
  if (preset == "geometric") {
    return {[d](const Vector&) { return Vector::Zero(d); },
            [](const Vector& x) { return Matrix(x.asDiagonal()); },
            {"geometric", 0.0, 1.0, true}};
  }
  if (preset == "tanh") {
    return {[](const Vector& x) { return Vector(-x.array().tanh()); },
            [](const Vector& x) { return Matrix((1.0 + 0.5 * x.array().tanh()).matrix().asDiagonal()); },
            {"tanh", 1.0, 1.0, true}};
  }
  if (preset == "rotation") {
    if (dim != 2) {
      fail(ErrorCode::DimensionMismatch, "rotation coefficients are two-dimensional");
    }
    return {[](const Vector& x) { return Vector(-0.5 * x); },
            [](const Vector& x) {
              const double angle = 0.5 * (x(0) - x(1));
              Matrix g(2, 2);
              g << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
              return g;
            },
            {"rotation", 0.5, 1.0, true}};
  }
  fail(ErrorCode::UnknownKind, "unknown coefficient preset '" + preset + "'");
}

void validate(const Problem& problem) {
  const auto d = static_cast<std::size_t>(problem.x0.size());
  if (d == 0 || problem.z.dim() != d || problem.l.dim() != d || problem.a.dim() != 1) {
    fail(ErrorCode::DimensionMismatch, "problem needs a scalar a and z, l matching x0");
  }
  if (!problem.coeffs.drift || !problem.coeffs.diffusion) {
    fail(ErrorCode::InvalidParameter, "coefficients are not set");
  }
  if (!(problem.horizon > 0.0) || !std::isfinite(problem.horizon)) {
    fail(ErrorCode::InvalidParameter, "horizon must be positive");
  }
  if (!(problem.p >= 1.0)) {
    fail(ErrorCode::InvalidP, "p must be at least 1");
  }
  for (std::size_t c = 0; c < d; ++c) {
    if (!std::isfinite(problem.x0(static_cast<Eigen::Index>(c)))) {
      fail(ErrorCode::NonFiniteValue, "initial point is not finite");
    }
    if (problem.x0(static_cast<Eigen::Index>(c)) < problem.l.value(0, c)) {
      fail(ErrorCode::InadmissibleStart, "initial point lies below the barrier in component " + std::to_string(c + 1));
    }
  }
}

std::vector<double> uniform_partition(double horizon, std::size_t n) {
  if (n == 0 || !(horizon > 0.0)) {
    fail(ErrorCode::InvalidParameter, "uniform partition needs n >= 1 and a positive horizon");
  }
  if (horizon * static_cast<double>(n) > 1e7) {
    fail(ErrorCode::PartitionOverflow, "uniform partition exceeds 1e7 steps");
  }
  std::vector<double> times;
  const double step_count = static_cast<double>(n);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) / step_count;
    if (t > horizon) break;
    times.push_back(t);
  }
  if (times.back() < horizon) {
    times.push_back(horizon);
  }
  return times;
}

std::vector<double> adaptive_partition(const Problem& problem, std::size_t n, std::size_t max_steps) {
  if (n == 0) {
    fail(ErrorCode::InvalidParameter, "adaptive partition needs n >= 1");
  }
  const double threshold = 1.0 / static_cast<double>(n);
  const double horizon = problem.horizon;
  std::vector<double> jumps;
  for (const StepPath* path : {&problem.a, &problem.z, &problem.l}) {
    for (std::size_t i = 1; i < path->size() && path->time(i) <= horizon; ++i) {
      if (path->jump(i).norm() > threshold) {
        jumps.push_back(path->time(i));
      }
    }
  }
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

  std::vector<double> times{0.0};
  double anchor = 0.0;
  std::size_t mesh_index = 0;
  auto next_jump = jumps.begin();
  const double step_count = static_cast<double>(n);
  while (true) {
    const double t = times.back();
    while (next_jump != jumps.end() && *next_jump <= t) {
      ++next_jump;
    }
    const double mesh = anchor + static_cast<double>(mesh_index + 1) / step_count;
    const bool jump_first = next_jump != jumps.end() && *next_jump <= mesh;
    const double next = jump_first ? *next_jump : mesh;
    if (next >= horizon) {
      times.push_back(horizon);
      break;
    }
    times.push_back(next);
    if (jump_first) {
      anchor = next;
      mesh_index = 0;
    } else {
      ++mesh_index;
    }
    if (times.size() > max_steps) {
      fail(ErrorCode::PartitionOverflow, "adaptive partition exceeds " + std::to_string(max_steps) + " steps");
    }
  }
  return times;
}

Solution euler_on_partition(const Problem& problem, const std::vector<double>& partition, Scheme scheme,
                            std::size_t n) {
  validate(problem);
  const StepPath a = problem.a.resample(partition);
  const StepPath z = problem.z.resample(partition);
  const StepPath l = problem.l.resample(partition);
  const std::size_t m = partition.size();
  const std::size_t d = static_cast<std::size_t>(problem.x0.size());

  std::vector<double> xs(m * d);
  std::vector<double> ks(m * d, 0.0);
  std::vector<double> ys(m * d);
  Vector x = problem.x0;
  Vector y = problem.x0;
  Vector k = Vector::Zero(static_cast<Eigen::Index>(d));
  std::copy(x.data(), x.data() + d, xs.begin());
  std::copy(y.data(), y.data() + d, ys.begin());

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const Vector drift = problem.coeffs.drift(x);
    const Matrix diffusion = problem.coeffs.diffusion(x);
    if (!drift.allFinite() || !diffusion.allFinite() || drift.size() != x.size() ||
        diffusion.rows() != x.size() || diffusion.cols() != x.size()) {
      fail(ErrorCode::CoefficientEvaluationFailure,
           "coefficients returned an invalid value at t=" + format_number(partition[i]));
    }
    const double da = a.value(i + 1, 0) - a.value(i, 0);
    const Vector dy = drift * da + diffusion * (z.point(i + 1) - z.point(i));
    const Vector candidate = x + dy;
    for (std::size_t c = 0; c < d; ++c) {
      const auto ci = static_cast<Eigen::Index>(c);
      const double floor = l.value(i + 1, c);
      k(ci) += std::max(0.0, floor - candidate(ci));
      x(ci) = std::max(candidate(ci), floor);
    }
    y += dy;
    std::copy(x.data(), x.data() + d, xs.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    std::copy(k.data(), k.data() + d, ks.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    std::copy(y.data(), y.data() + d, ys.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }

  Solution solution{
      Reflection{StepPath::make(partition, std::move(xs), d), StepPath::make(partition, std::move(ks), d),
                 StepPath::make(partition, std::move(ys), d), l},
      scheme, n, Diagnostics{}};
  solution.diagnostics.steps = m - 1;
  solution.diagnostics.regulator_sup = sup_norm(solution.reflection.k);
  solution.diagnostics.state_norm = m <= kMaxDiagnosticPoints ? variation_norm(solution.reflection.x, problem.p)
                                                               : std::numeric_limits<double>::quiet_NaN();
  return solution;
}

Solution euler_uniform(const Problem& problem, std::size_t n) {
  validate(problem);
  return euler_on_partition(problem, uniform_partition(problem.horizon, n), Scheme::Uniform, n);
}

Solution euler_adaptive(const Problem& problem, std::size_t n, std::size_t max_steps) {
  validate(problem);
  return euler_on_partition(problem, adaptive_partition(problem, n, max_steps), Scheme::Adaptive, n);
}

double refinement_gap(const Solution& coarse, const Solution& fine) {
  const auto& cx = coarse.reflection.x;
  const auto& ck = coarse.reflection.k;
  const auto& fx = fine.reflection.x;
  const auto& fk = fine.reflection.k;
  double gap = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const double t = cx.time(i);
    while (j + 1 < fx.size() && fx.time(j + 1) <= t) {
      ++j;
    }
    gap = std::max(gap, (cx.point(i) - fx.point(j)).norm());
    gap = std::max(gap, (ck.point(i) - fk.point(j)).norm());
  }
  return gap;
}

Solution solve(const Problem& problem, double tol, std::size_t n0, std::size_t max_doublings) {
  validate(problem);
  if (std::isnan(tol) || tol < 0.0 || n0 == 0) {
    fail(ErrorCode::InvalidParameter, "solve needs tol >= 0 and n0 >= 1");
  }
  std::size_t n = n0;
  Solution previous = euler_adaptive(problem, n);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t doubling = 1; doubling <= max_doublings; ++doubling) {
    n *= 2;
    Solution current = euler_adaptive(problem, n);
    gap = refinement_gap(previous, current);
    if (gap < tol) {
      previous.diagnostics.cauchy_gap = gap;
      return previous;
    }
    previous = std::move(current);
  }
  fail(ErrorCode::NoConvergence, "refinement gap " + format_number(gap) + " still above tolerance " +
                                     format_number(tol) + " after " + std::to_string(max_doublings) +
                                     " doublings");
}

std::vector<LadderRow> convergence_ladder(const Problem& problem, std::size_t n0, std::size_t levels) {
  validate(problem);
  if (n0 == 0) {
    fail(ErrorCode::InvalidParameter, "ladder needs n0 >= 1");
  }
  std::vector<LadderRow> rows;
  std::optional<Solution> previous;
  std::size_t n = n0;
  for (std::size_t level = 0; level < levels; ++level, n *= 2) {
    const auto start = std::chrono::steady_clock::now();
    Solution current = euler_adaptive(problem, n);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double gap = previous ? refinement_gap(*previous, current) : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({n, gap, seconds});
    previous = std::move(current);
  }
  return rows;
}

EstimateReport a_priori_check(const Solution& solution, const Problem& problem, double relative_slack) {
  const auto& r = solution.reflection;
  const double d = static_cast<double>(r.x.dim());
  const double p = problem.p;
  const double sup_l = sup_norm(r.l);
  EstimateReport report;
  const double k_norm = variation_norm(r.k, p);
  const double k_bound = d * sup_norm(r.y) + d * sup_l;
  report.rows.push_back({"regulator_bound", k_norm, k_bound, within(k_norm, k_bound, relative_slack)});
  const double x_norm = variation_norm(r.x, p);
  const double x_bound = (d + 1.0) * variation_norm(r.y, p) + d * sup_l;
  report.rows.push_back({"state_bound", x_norm, x_bound, within(x_norm, x_bound, relative_slack)});
  return report;
}

std::string solution_to_csv(const Solution& solution, std::optional<std::uint64_t> replicate, bool header) {
  const auto& x = solution.reflection.x;
  const auto& k = solution.reflection.k;
  const std::size_t d = x.dim();
  std::ostringstream out;
  if (header) {
    if (replicate) out << "replicate,";
    out << 't';
    for (std::size_t c = 1; c <= d; ++c) out << ",x" << c;
    for (std::size_t c = 1; c <= d; ++c) out << ",k" << c;
    out << '\n';
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (replicate) out << *replicate << ',';
    out << format_number(x.time(i));
    for (std::size_t c = 0; c < d; ++c) out << ',' << format_number(x.value(i, c));
    for (std::size_t c = 0; c < d; ++c) out << ',' << format_number(k.value(i, c));
    out << '\n';
  }
  const std::string prefix = replicate ? "# replicate=" + std::to_string(*replicate) + " " : "# ";
  const auto& diag = solution.diagnostics;
  out << prefix << "scheme=" << (solution.scheme == Scheme::Uniform ? "uniform" : "adaptive") << '\n';
  out << prefix << "n=" << solution.n << '\n';
  out << prefix << "steps=" << diag.steps << '\n';
  out << prefix << "state_norm=" << format_number(diag.state_norm) << '\n';
  out << prefix << "regulator_sup=" << format_number(diag.regulator_sup) << '\n';
  out << prefix << "cauchy_gap=" << format_number(diag.cauchy_gap) << '\n';
  return out.str();
}

}  // namespace rsde
