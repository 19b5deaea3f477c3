#include "rsde/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsde/error.hpp"
#include "rsde/path_io.hpp"

namespace rsde {

Reflection solve_sp(const StepPath& input, const StepPath& barrier) {
  if (input.dim() != barrier.dim()) {
    fail(ErrorCode::DimensionMismatch, "input and barrier have different dimensions");
  }
  const std::size_t d = input.dim();
  for (std::size_t c = 0; c < d; ++c) {
    if (barrier.value(0, c) > input.value(0, c)) {
      fail(ErrorCode::BarrierAboveStart, "barrier starts above the input in component " + std::to_string(c + 1));
    }
  }
  auto aligned = align({input, barrier});
  const StepPath& y = aligned[0];
  const StepPath& l = aligned[1];
  const std::size_t n = y.size();

  std::vector<double> k(n * d);
  std::vector<double> x(n * d);
  for (std::size_t c = 0; c < d; ++c) {
    double push = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      push = std::max(push, l.value(i, c) - y.value(i, c));
      k[i * d + c] = push;
      x[i * d + c] = y.value(i, c) + push;
    }
  }
  std::vector<double> times(y.times().begin(), y.times().end());
  return Reflection{StepPath::make(times, std::move(x), d), StepPath::make(times, std::move(k), d), y, l};
}

bool ReflectionResiduals::holds(double relative_tolerance) const {
  const double bound = relative_tolerance * scale;
  return decomposition <= bound && barrier_breach <= bound && regulator_start <= bound && regulator_drop <= bound &&
         complementarity <= bound;
}

ReflectionResiduals reflection_residuals(const Reflection& r) {
  auto aligned = align({r.x, r.k, r.y, r.l});
  const auto& x = aligned[0];
  const auto& k = aligned[1];
  const auto& y = aligned[2];
  const auto& l = aligned[3];
  const std::size_t d = x.dim();

  ReflectionResiduals out;
  double scale = 1.0;
  for (const auto& path : aligned) {
    for (double v : path.values()) {
      scale = std::max(scale, std::abs(v));
    }
  }
  out.scale = scale;
  for (std::size_t c = 0; c < d; ++c) {
    out.regulator_start = std::max(out.regulator_start, std::abs(k.value(0, c)));
    double work = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.decomposition = std::max(out.decomposition, std::abs(x.value(i, c) - y.value(i, c) - k.value(i, c)));
      out.barrier_breach = std::max(out.barrier_breach, l.value(i, c) - x.value(i, c));
      if (i > 0) {
        const double dk = k.value(i, c) - k.value(i - 1, c);
        out.regulator_drop = std::max(out.regulator_drop, -dk);
        work += (x.value(i, c) - l.value(i, c)) * dk;
      }
    }
    out.complementarity = std::max(out.complementarity, std::abs(work));
  }
  return out;
}

bool within(double lhs, double rhs, double relative_slack) {
  return lhs <= rhs + relative_slack * std::max(std::abs(lhs), std::abs(rhs));
}

bool EstimateReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const EstimateRow& r) { return r.pass; });
}

const EstimateRow& EstimateReport::row(const std::string& id) const {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const EstimateRow& r) { return r.id == id; });
  if (it == rows.end()) {
    fail(ErrorCode::InvalidParameter, "no estimate row '" + id + "'");
  }
  return *it;
}

namespace {

struct SupComparison {
  double lhs;
  double rhs;
  bool pass;
};

// Per-component sup-norm comparison sup|u^c| <= a sup|v^c| + sup|w^c|, reporting
// the component with the smallest margin. All paths share one grid.
SupComparison worst_component(const StepPath& u, double factor, const StepPath& v, const StepPath& w, double slack) {
  SupComparison worst{0.0, 0.0, true};
  double worst_margin = INFINITY;
  for (std::size_t c = 0; c < u.dim(); ++c) {
    const double lhs = sup_norm(u.component(c));
    const double rhs = factor * sup_norm(v.component(c)) + sup_norm(w.component(c));
    const bool ok = within(lhs, rhs, slack);
    worst.pass = worst.pass && ok;
    if (rhs - lhs < worst_margin) {
      worst_margin = rhs - lhs;
      worst.lhs = lhs;
      worst.rhs = rhs;
    }
  }
  return worst;
}

}  // namespace

EstimateReport check_estimates(const StepPath& y, const StepPath& l, const StepPath& y2, const StepPath& l2, double p,
                               double relative_slack) {
  if (y.dim() != l.dim() || y.dim() != y2.dim() || y.dim() != l2.dim()) {
    fail(ErrorCode::DimensionMismatch, "estimate check needs four paths of one dimension");
  }
  auto aligned = align({y, l, y2, l2});
  const Reflection first = solve_sp(aligned[0], aligned[1]);
  const Reflection second = solve_sp(aligned[2], aligned[3]);
  const double d = static_cast<double>(y.dim());
  const Interval window{0.0, aligned[0].horizon()};

  const StepPath dx = first.x - second.x;
  const StepPath dk = first.k - second.k;
  const StepPath dy = aligned[0] - aligned[2];
  const StepPath dl = aligned[1] - aligned[3];

  EstimateReport report;
  auto add = [&](std::string id, double lhs, double rhs) {
    report.rows.push_back({std::move(id), lhs, rhs, within(lhs, rhs, relative_slack)});
  };

  const double vbar_dy = variation_norm(dy, p, window);
  const double vbar_dl = variation_norm(dl, p, window);
  add("pvar_state", variation_norm(dx, p, window), (d + 1.0) * vbar_dy + d * vbar_dl);
  add("pvar_regulator", variation_norm(dk, p, window), d * vbar_dy + d * vbar_dl);

  const double v_dy = p_variation_seminorm(dy, p, window);
  const double v_dl = p_variation_seminorm(dl, p, window);
  const double dy0 = dy.point(0).norm();
  const double dl0 = dl.point(0).norm();
  add("pvar_state_split", p_variation_seminorm(dx, p, window),
      (d + 1.0) * v_dy + d * dy0 + d * v_dl + d * dl0);
  add("pvar_regulator_split", p_variation_seminorm(dk, p, window), d * v_dy + d * dy0 + d * v_dl + d * dl0);

  const auto sup_state = worst_component(dx, 2.0, dy, dl, relative_slack);
  report.rows.push_back({"sup_state", sup_state.lhs, sup_state.rhs, sup_state.pass});
  const auto sup_regulator = worst_component(dk, 1.0, dy, dl, relative_slack);
  report.rows.push_back({"sup_regulator", sup_regulator.lhs, sup_regulator.rhs, sup_regulator.pass});

  int index = 1;
  for (const Reflection* r : {&first, &second}) {
    const std::string suffix = "_" + std::to_string(index++);
    const double sup_l = sup_norm(r->l, window);
    add("regulator_bound" + suffix, variation_norm(r->k, p, window), d * sup_norm(r->y, window) + d * sup_l);
    add("state_bound" + suffix, variation_norm(r->x, p, window),
        (d + 1.0) * variation_norm(r->y, p, window) + d * sup_l);
  }
  return report;
}

std::string report_to_csv(const EstimateReport& report) {
  std::ostringstream out;
  out << "id,lhs,rhs,margin,pass\n";
  for (const auto& row : report.rows) {
    out << row.id << ',' << format_number(row.lhs) << ',' << format_number(row.rhs) << ','
        << format_number(row.margin()) << ',' << (row.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace rsde
