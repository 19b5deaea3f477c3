// rsde: simulate reflected equations, run convergence ladders, sample fBm,
// run verification campaigns and compute p-variation of CSV paths.
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rsde/rsde.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfig = 2, kNumerical = 3 };

struct Failure {
  RsdeStatus status = RSDE_SUCCESS;
  std::string message;
};

int exit_code(RsdeStatus status) {
  switch (status) {
    case RSDE_SUCCESS:
      return kOk;
    case RSDE_NO_CONVERGENCE:
    case RSDE_PARTITION_OVERFLOW:
    case RSDE_EMBEDDING_FAILURE:
    case RSDE_COEFFICIENT_EVALUATION_FAILURE:
      return kNumerical;
    default:
      return kConfig;
  }
}

int report(const Failure& failure) {
  std::cerr << "error=" << rsde_status_name(failure.status) << '\n';
  if (!failure.message.empty()) std::cerr << failure.message << '\n';
  return exit_code(failure.status);
}

Failure last_failure(RsdeStatus status) { return {status, rsde_last_error()}; }

std::string take(char* text) {
  std::string out = text ? text : "";
  rsde_free_string(text);
  return out;
}

bool write_output(const std::string& out_file, const std::string& text) {
  if (out_file.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream out(out_file, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct ScenarioFlags {
  std::string preset = "linear-reflected";
  std::optional<std::string> coefficients, driver, fv_driver, barrier, sigma;
  std::optional<std::size_t> dim, driver_steps;
  std::optional<double> hurst, horizon, x0, barrier_level, barrier_amplitude, barrier_frequency, jump_time,
      jump_size, p;
};

bool set_name(char (&dest)[32], const std::optional<std::string>& value) {
  if (!value) return true;
  if (value->size() >= sizeof dest) return false;
  std::memset(dest, 0, sizeof dest);
  std::memcpy(dest, value->data(), value->size());
  return true;
}

template <class T>
void set_value(T& dest, const std::optional<T>& value) {
  if (value) dest = *value;
}

Failure build_scenario(const ScenarioFlags& flags, RsdeScenario& scenario) {
  if (auto status = rsde_scenario_preset(flags.preset.c_str(), &scenario)) return last_failure(status);
  if (!set_name(scenario.coefficients, flags.coefficients) || !set_name(scenario.driver, flags.driver) ||
      !set_name(scenario.fv_driver, flags.fv_driver) || !set_name(scenario.barrier, flags.barrier) ||
      !set_name(scenario.sigma, flags.sigma)) {
    return {RSDE_UNKNOWN_KIND, "preset name too long"};
  }
  set_value(scenario.dim, flags.dim);
  set_value(scenario.driver_steps, flags.driver_steps);
  set_value(scenario.hurst, flags.hurst);
  set_value(scenario.horizon, flags.horizon);
  set_value(scenario.x0, flags.x0);
  set_value(scenario.barrier_level, flags.barrier_level);
  set_value(scenario.barrier_amplitude, flags.barrier_amplitude);
  set_value(scenario.barrier_frequency, flags.barrier_frequency);
  set_value(scenario.jump_time, flags.jump_time);
  set_value(scenario.jump_size, flags.jump_size);
  set_value(scenario.p, flags.p);
  return {};
}

struct ReplicateResult {
  std::string csv;
  Failure failure;
};

// Runs job(r) for r in [0, count) on `workers` threads; results keep index order.
template <class Job>
std::vector<ReplicateResult> run_replicates(std::size_t count, std::size_t workers, Job job) {
  std::vector<ReplicateResult> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < count; r = next++) results[r] = job(r);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

int emit_replicates(const std::vector<ReplicateResult>& results, const std::string& out_file) {
  std::string text;
  for (const auto& result : results) {
    if (result.failure.status != RSDE_SUCCESS) return report(result.failure);
    text += result.csv;
  }
  if (!write_output(out_file, text)) return report({RSDE_IO_ERROR, "cannot write " + out_file});
  return kOk;
}

struct SolveFlags {
  std::string scheme = "uniform";
  std::size_t n = 1024;
  std::optional<double> tol;
  std::size_t n0 = 16;
  std::size_t levels = 8;
};

ReplicateResult simulate_one(const RsdeScenario& scenario, const SolveFlags& solve, std::uint64_t seed,
                             std::size_t r, bool replicate_column) {
  ReplicateResult result;
  RsdeProblem problem = nullptr;
  if (auto status = rsde_problem_create(&scenario, seed, r, &problem)) {
    result.failure = last_failure(status);
    return result;
  }
  RsdeSolution solution = nullptr;
  RsdeStatus status;
  if (solve.tol) {
    status = rsde_solve(problem, *solve.tol, solve.n0, &solution);
  } else {
    status = rsde_solve_fixed(problem, solve.scheme == "adaptive" ? RSDE_SCHEME_ADAPTIVE : RSDE_SCHEME_UNIFORM,
                              solve.n, &solution);
  }
  if (status == RSDE_SUCCESS) {
    char* csv = nullptr;
    status = rsde_solution_to_csv(solution, replicate_column ? static_cast<std::int64_t>(r) : -1, r == 0, &csv);
    if (status == RSDE_SUCCESS) result.csv = take(csv);
  }
  if (status != RSDE_SUCCESS) result.failure = last_failure(status);
  if (solution) rsde_solution_destroy(solution);
  rsde_problem_destroy(problem);
  return result;
}

ReplicateResult convergence_one(const RsdeScenario& scenario, const SolveFlags& solve, std::uint64_t seed,
                                std::size_t r, bool replicate_column) {
  ReplicateResult result;
  RsdeProblem problem = nullptr;
  if (auto status = rsde_problem_create(&scenario, seed, r, &problem)) {
    result.failure = last_failure(status);
    return result;
  }
  char* csv = nullptr;
  if (auto status = rsde_convergence_csv(problem, solve.n0, solve.levels, &csv)) {
    result.failure = last_failure(status);
  } else {
    std::string table = take(csv);
    if (replicate_column) {
      std::string prefixed;
      std::size_t start = 0;
      bool header = true;
      while (start < table.size()) {
        const auto end = table.find('\n', start);
        const auto line = table.substr(start, end - start);
        if (header) {
          if (r == 0) prefixed += "replicate," + line + '\n';
          header = false;
        } else {
          prefixed += std::to_string(r) + ',' + line + '\n';
        }
        start = end == std::string::npos ? table.size() : end + 1;
      }
      table = std::move(prefixed);
    } else if (r != 0) {
      table = table.substr(table.find('\n') + 1);
    }
    result.csv = std::move(table);
  }
  rsde_problem_destroy(problem);
  return result;
}

void add_scenario_flags(CLI::App& app, ScenarioFlags& s) {
  app.add_option("--preset", s.preset, "Scenario preset")
      ->check(CLI::IsMember({"linear-reflected", "geometric", "degenerate", "tanh-fbm", "rotation-fbm"}));
  app.add_option("--coefficients", s.coefficients, "zero | identity | geometric | tanh | rotation");
  app.add_option("--driver", s.driver, "fbm | linear | jump | zero");
  app.add_option("--fv-driver", s.fv_driver, "zero | linear | jump");
  app.add_option("--barrier", s.barrier, "constant | sine | jump");
  app.add_option("--sigma", s.sigma, "one | step | sine");
  app.add_option("--dim", s.dim, "State dimension");
  app.add_option("--hurst", s.hurst, "Hurst index in (0.5, 1)");
  app.add_option("--horizon", s.horizon, "Time horizon T");
  app.add_option("--driver-steps", s.driver_steps, "Driver grid steps");
  app.add_option("--x0", s.x0, "Initial value (all components)");
  app.add_option("--barrier-level", s.barrier_level);
  app.add_option("--barrier-amplitude", s.barrier_amplitude);
  app.add_option("--barrier-frequency", s.barrier_frequency);
  app.add_option("--jump-time", s.jump_time);
  app.add_option("--jump-size", s.jump_size);
  app.add_option("--p", s.p, "Variation exponent for diagnostics");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflected equations driven by step paths"};
  app.set_config("--config", "", "INI file of option=value lines; flags override it");
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_file;
  std::size_t replicates = 1;
  std::size_t workers = 1;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_file, "Output file (stdout if absent)");
  app.add_option("--replicates", replicates, "Number of replicates")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  ScenarioFlags scenario_flags;
  SolveFlags solve_flags;
  add_scenario_flags(app, scenario_flags);

  auto* simulate = app.add_subcommand("simulate", "Solve the configured problem and write the solution CSV");
  simulate->fallthrough();
  simulate->add_option("--scheme", solve_flags.scheme, "uniform | adaptive")
      ->check(CLI::IsMember({"uniform", "adaptive"}));
  simulate->add_option("--n", solve_flags.n, "Steps per unit time")->check(CLI::PositiveNumber);
  simulate->add_option("--tol", solve_flags.tol, "Refine dyadically until the gap is below tol");
  simulate->add_option("--n0", solve_flags.n0, "Starting n for --tol")->check(CLI::PositiveNumber);

  auto* convergence = app.add_subcommand("convergence", "Dyadic refinement ladder: n, gap, seconds");
  convergence->fallthrough();
  convergence->add_option("--n0", solve_flags.n0, "Coarsest n")->check(CLI::PositiveNumber);
  convergence->add_option("--levels", solve_flags.levels, "Number of refinements");

  double fbm_hurst = 0.75;
  double fbm_horizon = 1.0;
  std::size_t fbm_steps = 1024;
  std::uint64_t fbm_index = 0;
  auto* fbm = app.add_subcommand("fbm", "Sample one fractional Brownian path");
  fbm->fallthrough();
  fbm->add_option("--steps", fbm_steps, "Grid steps")->check(CLI::PositiveNumber);
  fbm->add_option("--index", fbm_index, "Path index within the seed");

  std::size_t cases = 1000;
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "Randomized campaign over the estimates");
  verify->fallthrough();
  verify->add_option("--cases", cases, "Number of random cases");
  verify->add_flag("--corrupt-solver", corrupt, "Test hook: break the reflection solver");

  std::string pvar_input;
  std::optional<double> from, to;
  auto* pvar = app.add_subcommand("pvar", "Print V_p of a CSV path over [from, to]");
  pvar->fallthrough();
  pvar->add_option("input", pvar_input, "CSV path file")->required();
  pvar->add_option("--from", from, "Window start");
  pvar->add_option("--to", to, "Window end (default: last time)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error=UsageError\n" << e.what() << '\n';
    return kConfig;
  }

  if (*simulate || *convergence) {
    RsdeScenario scenario;
    if (auto failure = build_scenario(scenario_flags, scenario); failure.status) return report(failure);
    const std::uint64_t s = seed.value_or(0);
    const bool column = replicates > 1;
    std::vector<ReplicateResult> results;
    if (*simulate) {
      results = run_replicates(replicates, workers,
                               [&](std::size_t r) { return simulate_one(scenario, solve_flags, s, r, column); });
    } else {
      results = run_replicates(replicates, workers,
                               [&](std::size_t r) { return convergence_one(scenario, solve_flags, s, r, column); });
    }
    return emit_replicates(results, out_file);
  }

  if (*fbm) {
    if (scenario_flags.hurst) fbm_hurst = *scenario_flags.hurst;
    if (scenario_flags.horizon) fbm_horizon = *scenario_flags.horizon;
    RsdePath path = nullptr;
    if (auto status = rsde_fbm_sample(fbm_hurst, fbm_horizon, fbm_steps, seed.value_or(0), fbm_index, &path)) {
      return report(last_failure(status));
    }
    char* csv = nullptr;
    auto status = rsde_path_to_csv(path, &csv);
    rsde_path_destroy(path);
    if (status) return report(last_failure(status));
    if (!write_output(out_file, take(csv))) return report({RSDE_IO_ERROR, "cannot write " + out_file});
    return kOk;
  }

  if (*verify) {
    RsdeCampaignOptions options{cases, seed.value_or(7), 1e-9, corrupt ? 1 : 0};
    char* csv = nullptr;
    std::size_t violations = 0;
    if (auto status = rsde_verify_campaign(&options, &csv, &violations)) return report(last_failure(status));
    if (!write_output(out_file, take(csv))) return report({RSDE_IO_ERROR, "cannot write " + out_file});
    if (violations > 0) {
      std::cerr << "error=VerificationFailure\nviolations=" << violations << '\n';
      return kVerifyFailed;
    }
    return kOk;
  }

  // pvar
  RsdePath path = nullptr;
  if (auto status = rsde_path_read_csv(pvar_input.c_str(), &path)) return report(last_failure(status));
  std::size_t count = 0;
  rsde_path_shape(path, &count, nullptr);
  std::vector<double> times(count);
  rsde_path_copy_data(path, times.data(), nullptr);
  double value = 0.0;
  const double p = scenario_flags.p.value_or(2.0);
  auto status = rsde_path_p_variation_seminorm(path, p, from.value_or(0.0), to.value_or(times.back()), &value);
  rsde_path_destroy(path);
  if (status) return report(last_failure(status));
  char line[64];
  std::snprintf(line, sizeof line, "%.17g\n", value);
  if (!write_output(out_file, line)) return report({RSDE_IO_ERROR, "cannot write " + out_file});
  return kOk;
}
