#include "rsde/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rsde/error.hpp"
#include "rsde/path_io.hpp"
#include "rsde/skorokhod.hpp"
#include "rsde/young.hpp"

namespace rsde {
namespace {

std::size_t pick(CounterRng& rng, std::size_t count) { return rng.next_u32() % count; }

std::vector<double> random_grid(CounterRng& rng, std::size_t max_points, double horizon) {
  const std::size_t m = 1 + pick(rng, max_points);
  std::vector<double> times(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    times[i] = times[i - 1] + 0.05 + rng.uniform();
  }
  if (m > 1) {
    const double scale = horizon / times.back();
    for (std::size_t i = 1; i < m; ++i) times[i] *= scale;
    times.back() = horizon;
    // Rescaling can merge neighbours in rare cases; keep the grid strictly increasing.
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }
  return times;
}

double random_increment(CounterRng& rng) {
  const double u = rng.uniform();
  if (u < 0.15) return 0.0;
  if (u < 0.25) return 5.0 * rng.normal();
  return rng.normal();
}

StepPath perturbed(CounterRng& rng, const StepPath& base, double size) {
  std::vector<double> values(base.values().begin(), base.values().end());
  for (double& v : values) {
    if (rng.uniform() < 0.7) v += size * rng.normal();
  }
  return StepPath::make(std::vector<double>(base.times().begin(), base.times().end()), std::move(values),
                        base.dim());
}

// Raises y so that y_0 >= l_0 in every component.
StepPath admissible(CounterRng& rng, const StepPath& y, const StepPath& l) {
  Vector offset(static_cast<Eigen::Index>(y.dim()));
  for (std::size_t c = 0; c < y.dim(); ++c) {
    const double gap = l.value(0, c) - y.value(0, c);
    double shift = std::max(0.0, gap) + (rng.uniform() < 0.3 ? 0.0 : 0.5 * rng.uniform());
    while (y.value(0, c) + shift < l.value(0, c)) shift = std::nextafter(shift, INFINITY);
    offset(static_cast<Eigen::Index>(c)) = shift;
  }
  return shifted(y, offset);
}

Reflection corrupt(Reflection r) {
  r.k = 0.5 * r.k;
  r.x = r.y + r.k;
  return r;
}

}  // namespace

StepPath random_step_path(CounterRng& rng, std::size_t max_points, std::size_t dim, double horizon) {
  auto times = random_grid(rng, max_points, horizon);
  std::vector<double> values(times.size() * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    values[c] = rng.normal();
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      values[i * dim + c] = values[(i - 1) * dim + c] + random_increment(rng);
    }
  }
  return StepPath::make(std::move(times), std::move(values), dim);
}

MatrixStepPath random_matrix_path(CounterRng& rng, std::size_t max_points, std::size_t dim, double horizon) {
  auto times = random_grid(rng, max_points, horizon);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> values;
  values.reserve(times.size());
  Matrix current(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) current(i, j) = rng.normal();
  values.push_back(current);
  for (std::size_t k = 1; k < times.size(); ++k) {
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) current(i, j) += random_increment(rng);
    values.push_back(current);
  }
  return MatrixStepPath::make(std::move(times), values);
}

CampaignResult run_campaign(const CampaignOptions& options) {
  static constexpr std::array<double, 4> kExponents = {1.0, 1.5, 2.0, 3.0};
  static constexpr std::array<std::pair<double, double>, 4> kYoungPairs = {
      std::pair{1.5, 1.5}, std::pair{2.0, 1.2}, std::pair{1.2, 2.0}, std::pair{3.0, 1.1}};

  CampaignResult result;
  auto record = [&](std::size_t index, std::string check, double lhs, double rhs, bool pass) {
    auto& [passed, total] = result.summary[check];
    ++total;
    if (pass) {
      ++passed;
    } else {
      ++result.violations;
    }
    result.rows.push_back({index, std::move(check), lhs, rhs, pass});
  };

  for (std::size_t index = 0; index < options.cases; ++index) {
    CounterRng rng(options.seed, index, 0);
    const std::size_t d = 1 + pick(rng, 3);
    const double p = kExponents[pick(rng, kExponents.size())];
    const std::size_t n = options.max_points;

    // Reflection map: two admissible problems, the second often a perturbation of the first.
    const StepPath l = random_step_path(rng, n, d);
    const StepPath y = admissible(rng, random_step_path(rng, n, d), l);
    StepPath l2 = l;
    StepPath y2 = y;
    if (rng.uniform() < 0.5) {
      l2 = perturbed(rng, l, 0.3);
      y2 = admissible(rng, perturbed(rng, y, 0.3), l2);
    } else {
      l2 = random_step_path(rng, n, d);
      y2 = admissible(rng, random_step_path(rng, n, d), l2);
    }

    const std::array<std::pair<const StepPath*, const StepPath*>, 2> instances{{{&y, &l}, {&y2, &l2}}};
    for (const auto& [input, barrier] : instances) {
      Reflection r = solve_sp(*input, *barrier);
      if (options.corrupt_solver) r = corrupt(std::move(r));
      const auto residuals = reflection_residuals(r);
      const double worst = std::max({residuals.decomposition, residuals.barrier_breach, residuals.regulator_start,
                                     residuals.regulator_drop, residuals.complementarity});
      record(index, "reflection", worst, 1e-12 * residuals.scale, residuals.holds(1e-12));
    }

    const auto report = check_estimates(y, l, y2, l2, p, options.relative_slack);
    for (const auto& row : report.rows) {
      record(index, row.id, row.lhs, row.rhs, row.pass);
    }

    // Running-maximum contraction on a scalar pair.
    const StepPath s1 = random_step_path(rng, n, 1);
    const StepPath s2 = rng.uniform() < 0.5 ? perturbed(rng, s1, 0.5) : random_step_path(rng, n, 1);
    const double lhs = p_variation(running_max(s1) - running_max(s2), p);
    const double rhs = p_variation(s1 - s2, p);
    record(index, "running_max", lhs, rhs, within(lhs, rhs, options.relative_slack));

    // Young bound for a random integrand/driver pair.
    const auto [yp, yq] = kYoungPairs[pick(rng, kYoungPairs.size())];
    const std::size_t young_dim = 1 + pick(rng, 2);
    const MatrixStepPath integrand = random_matrix_path(rng, n, young_dim);
    const StepPath driver = random_step_path(rng, n, young_dim);
    const auto young = young_bound_check(integrand, driver, yp, yq, {0.0, 1.0}, options.relative_slack);
    record(index, "young", young.lhs, young.rhs, young.pass);
  }
  return result;
}

std::string campaign_to_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "case,check,lhs,rhs,margin,pass\n";
  for (const auto& row : result.rows) {
    out << row.case_index << ',' << row.check << ',' << format_number(row.lhs) << ',' << format_number(row.rhs)
        << ',' << format_number(row.rhs - row.lhs) << ',' << (row.pass ? 1 : 0) << '\n';
  }
  for (const auto& [check, counts] : result.summary) {
    out << "# summary check=" << check << " passed=" << counts.first << " total=" << counts.second << '\n';
  }
  out << "# violations=" << result.violations << '\n';
  return out.str();
}

}  // namespace rsde
