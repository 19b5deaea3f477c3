#include "rsde/rsde.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "rsde/drivers.hpp"
#include "rsde/error.hpp"
#include "rsde/path.hpp"
#include "rsde/path_io.hpp"
#include "rsde/scenario.hpp"
#include "rsde/sde.hpp"
#include "rsde/skorokhod.hpp"
#include "rsde/verify.hpp"
#include "rsde/young.hpp"

struct RsdePath_ {
  rsde::StepPath path;
};

struct RsdeProblem_ {
  rsde::Problem problem;
};

struct RsdeSolution_ {
  rsde::Solution solution;
};

namespace {

thread_local std::string last_error;

template <class F>
RsdeStatus guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RSDE_SUCCESS;
  } catch (const rsde::Error& e) {
    last_error = e.what();
    return static_cast<RsdeStatus>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RSDE_UNKNOWN_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RSDE_UNKNOWN_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return RSDE_UNKNOWN_ERROR;
  }
}

template <class T>
void require(const T* pointer, const char* what) {
  if (pointer == nullptr) {
    rsde::fail(rsde::ErrorCode::InvalidHandle, std::string("null ") + what);
  }
}

char* copy_string(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

RsdePath wrap(rsde::StepPath path) { return new RsdePath_{std::move(path)}; }

void copy_name(char (&dest)[32], const std::string& name) {
  if (name.size() >= sizeof dest) {
    rsde::fail(rsde::ErrorCode::InvalidParameter, "name too long: " + name);
  }
  std::memset(dest, 0, sizeof dest);
  std::memcpy(dest, name.data(), name.size());
}

std::string read_name(const char (&src)[32]) { return std::string(src, strnlen(src, sizeof src)); }

void to_c(const rsde::ScenarioConfig& config, RsdeScenario* out) {
  copy_name(out->coefficients, config.coefficients);
  copy_name(out->driver, config.driver);
  copy_name(out->fv_driver, config.fv_driver);
  copy_name(out->barrier, config.barrier);
  copy_name(out->sigma, config.sigma);
  out->dim = config.dim;
  out->hurst = config.hurst;
  out->horizon = config.horizon;
  out->driver_steps = config.driver_steps;
  out->x0 = config.x0;
  out->barrier_level = config.barrier_level;
  out->barrier_amplitude = config.barrier_amplitude;
  out->barrier_frequency = config.barrier_frequency;
  out->jump_time = config.jump_time;
  out->jump_size = config.jump_size;
  out->p = config.p;
}

rsde::ScenarioConfig from_c(const RsdeScenario& in) {
  rsde::ScenarioConfig config;
  config.coefficients = read_name(in.coefficients);
  config.driver = read_name(in.driver);
  config.fv_driver = read_name(in.fv_driver);
  config.barrier = read_name(in.barrier);
  config.sigma = read_name(in.sigma);
  config.dim = in.dim;
  config.hurst = in.hurst;
  config.horizon = in.horizon;
  config.driver_steps = in.driver_steps;
  config.x0 = in.x0;
  config.barrier_level = in.barrier_level;
  config.barrier_amplitude = in.barrier_amplitude;
  config.barrier_frequency = in.barrier_frequency;
  config.jump_time = in.jump_time;
  config.jump_size = in.jump_size;
  config.p = in.p;
  return config;
}

}  // namespace

extern "C" {

RSDE_EXPORT const char* rsde_status_name(RsdeStatus status) {
  // string_view literals from error_name are NUL-terminated.
  return rsde::error_name(static_cast<rsde::ErrorCode>(status)).data();
}

RSDE_EXPORT const char* rsde_last_error(void) { return last_error.c_str(); }

RSDE_EXPORT void rsde_free_string(char* text) { std::free(text); }

// ---------------------------------------------------------------------------
// Paths

RSDE_EXPORT RsdeStatus rsde_path_create(const double* times, size_t count, const double* values, size_t dim,
                                        RsdePath* out) {
  return guarded([&] {
    require(times, "times");
    require(values, "values");
    require(out, "output handle");
    *out = wrap(rsde::StepPath::make(std::vector<double>(times, times + count),
                                     std::vector<double>(values, values + count * dim), dim));
  });
}

RSDE_EXPORT RsdeStatus rsde_path_destroy(RsdePath path) {
  if (path == nullptr) return RSDE_INVALID_HANDLE;
  delete path;
  return RSDE_SUCCESS;
}

RSDE_EXPORT RsdeStatus rsde_path_shape(RsdePath path, size_t* count, size_t* dim) {
  return guarded([&] {
    require(path, "path");
    if (count) *count = path->path.size();
    if (dim) *dim = path->path.dim();
  });
}

RSDE_EXPORT RsdeStatus rsde_path_copy_data(RsdePath path, double* times, double* values) {
  return guarded([&] {
    require(path, "path");
    const auto& p = path->path;
    if (times) std::copy(p.times().begin(), p.times().end(), times);
    if (values) std::copy(p.values().begin(), p.values().end(), values);
  });
}

RSDE_EXPORT RsdeStatus rsde_path_eval(RsdePath path, double t, double* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output buffer");
    const auto v = path->path.eval(t);
    std::copy(v.data(), v.data() + v.size(), out);
  });
}

RSDE_EXPORT RsdeStatus rsde_path_left_limit(RsdePath path, double t, double* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output buffer");
    const auto v = path->path.left_limit(t);
    std::copy(v.data(), v.data() + v.size(), out);
  });
}

RSDE_EXPORT RsdeStatus rsde_path_read_csv(const char* file, RsdePath* out) {
  return guarded([&] {
    require(file, "file name");
    require(out, "output handle");
    *out = wrap(rsde::read_path_csv(std::string(file)));
  });
}

RSDE_EXPORT RsdeStatus rsde_path_write_csv(RsdePath path, const char* file) {
  return guarded([&] {
    require(path, "path");
    require(file, "file name");
    rsde::write_path_csv(std::string(file), path->path);
  });
}

RSDE_EXPORT RsdeStatus rsde_path_to_csv(RsdePath path, char** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output string");
    *out = copy_string(rsde::path_to_csv(path->path));
  });
}

RSDE_EXPORT RsdeStatus rsde_path_p_variation(RsdePath path, double p, double a, double b, double* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = rsde::p_variation(path->path, p, {a, b});
  });
}

RSDE_EXPORT RsdeStatus rsde_path_p_variation_seminorm(RsdePath path, double p, double a, double b, double* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = rsde::p_variation_seminorm(path->path, p, {a, b});
  });
}

RSDE_EXPORT RsdeStatus rsde_path_variation_norm(RsdePath path, double p, double a, double b, double* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = rsde::variation_norm(path->path, p, {a, b});
  });
}

RSDE_EXPORT RsdeStatus rsde_path_running_max(RsdePath path, RsdePath* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output handle");
    *out = wrap(rsde::running_max(path->path));
  });
}

// ---------------------------------------------------------------------------
// Reflection map, zeta, fBm

RSDE_EXPORT RsdeStatus rsde_skorokhod_solve(RsdePath input, RsdePath barrier, RsdePath* x, RsdePath* k) {
  return guarded([&] {
    require(input, "input path");
    require(barrier, "barrier path");
    auto reflection = rsde::solve_sp(input->path, barrier->path);
    if (x) *x = wrap(std::move(reflection.x));
    if (k) *k = wrap(std::move(reflection.k));
  });
}

RSDE_EXPORT RsdeStatus rsde_skorokhod_check(RsdePath y, RsdePath l, RsdePath y2, RsdePath l2, double p, char** csv,
                                            int* all_pass) {
  return guarded([&] {
    require(y, "y");
    require(l, "l");
    require(y2, "y2");
    require(l2, "l2");
    const auto report = rsde::check_estimates(y->path, l->path, y2->path, l2->path, p);
    if (csv) *csv = copy_string(rsde::report_to_csv(report));
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

RSDE_EXPORT RsdeStatus rsde_zeta(double s, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = rsde::zeta(s);
  });
}

RSDE_EXPORT RsdeStatus rsde_fbm_sample(double hurst, double horizon, size_t steps, uint64_t seed,
                                       uint64_t path_index, RsdePath* out) {
  return guarded([&] {
    require(out, "output handle");
    *out = wrap(rsde::sample_fbm({hurst, horizon, steps, seed}, path_index));
  });
}

// ---------------------------------------------------------------------------
// Problems and solutions

RSDE_EXPORT RsdeStatus rsde_scenario_default(RsdeScenario* out) {
  return guarded([&] {
    require(out, "scenario");
    to_c(rsde::ScenarioConfig{}, out);
  });
}

RSDE_EXPORT RsdeStatus rsde_scenario_preset(const char* name, RsdeScenario* out) {
  return guarded([&] {
    require(name, "preset name");
    require(out, "scenario");
    to_c(rsde::scenario_preset(name), out);
  });
}

RSDE_EXPORT RsdeStatus rsde_problem_create(const RsdeScenario* scenario, uint64_t seed, uint64_t replicate,
                                           RsdeProblem* out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "output handle");
    *out = new RsdeProblem_{rsde::build_problem(from_c(*scenario), seed, replicate)};
  });
}

RSDE_EXPORT RsdeStatus rsde_problem_destroy(RsdeProblem problem) {
  if (problem == nullptr) return RSDE_INVALID_HANDLE;
  delete problem;
  return RSDE_SUCCESS;
}

RSDE_EXPORT RsdeStatus rsde_solve_fixed(RsdeProblem problem, RsdeScheme scheme, size_t n, RsdeSolution* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "output handle");
    if (scheme == RSDE_SCHEME_UNIFORM) {
      *out = new RsdeSolution_{rsde::euler_uniform(problem->problem, n)};
    } else if (scheme == RSDE_SCHEME_ADAPTIVE) {
      *out = new RsdeSolution_{rsde::euler_adaptive(problem->problem, n)};
    } else {
      rsde::fail(rsde::ErrorCode::UnknownKind, "unknown scheme");
    }
  });
}

RSDE_EXPORT RsdeStatus rsde_solve(RsdeProblem problem, double tol, size_t n0, RsdeSolution* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "output handle");
    *out = new RsdeSolution_{rsde::solve(problem->problem, tol, n0)};
  });
}

RSDE_EXPORT RsdeStatus rsde_solution_destroy(RsdeSolution solution) {
  if (solution == nullptr) return RSDE_INVALID_HANDLE;
  delete solution;
  return RSDE_SUCCESS;
}

RSDE_EXPORT RsdeStatus rsde_solution_paths(RsdeSolution solution, RsdePath* x, RsdePath* k) {
  return guarded([&] {
    require(solution, "solution");
    if (x) *x = wrap(solution->solution.reflection.x);
    if (k) *k = wrap(solution->solution.reflection.k);
  });
}

RSDE_EXPORT RsdeStatus rsde_solution_to_csv(RsdeSolution solution, int64_t replicate, int header, char** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "output string");
    std::optional<std::uint64_t> index;
    if (replicate >= 0) index = static_cast<std::uint64_t>(replicate);
    *out = copy_string(rsde::solution_to_csv(solution->solution, index, header != 0));
  });
}

RSDE_EXPORT RsdeStatus rsde_solution_a_priori_check(RsdeSolution solution, RsdeProblem problem, char** csv,
                                                    int* all_pass) {
  return guarded([&] {
    require(solution, "solution");
    require(problem, "problem");
    const auto report = rsde::a_priori_check(solution->solution, problem->problem);
    if (csv) *csv = copy_string(rsde::report_to_csv(report));
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

RSDE_EXPORT RsdeStatus rsde_convergence_csv(RsdeProblem problem, size_t n0, size_t levels, char** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "output string");
    std::ostringstream csv;
    csv << "n,gap,seconds\n";
    for (const auto& row : rsde::convergence_ladder(problem->problem, n0, levels)) {
      csv << row.n << ',' << rsde::format_number(row.gap) << ',' << rsde::format_number(row.seconds) << '\n';
    }
    *out = copy_string(csv.str());
  });
}

RSDE_EXPORT RsdeStatus rsde_verify_campaign(const RsdeCampaignOptions* options, char** csv, size_t* violations) {
  return guarded([&] {
    require(options, "campaign options");
    rsde::CampaignOptions opts;
    opts.cases = options->cases;
    opts.seed = options->seed;
    if (options->relative_slack > 0.0) opts.relative_slack = options->relative_slack;
    opts.corrupt_solver = options->corrupt_solver != 0;
    const auto result = rsde::run_campaign(opts);
    if (csv) *csv = copy_string(rsde::campaign_to_csv(result));
    if (violations) *violations = result.violations;
  });
}

}  // extern "C"
