#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "rsde/rsde.h"

namespace {

RsdePath scalar_path(std::vector<double> times, std::vector<double> values) {
  RsdePath path = nullptr;
  REQUIRE(rsde_path_create(times.data(), times.size(), values.data(), 1, &path) == RSDE_SUCCESS);
  return path;
}

std::string take(char* text) {
  std::string out = text;
  rsde_free_string(text);
  return out;
}

}  // namespace

TEST_CASE("paths through the C interface") {
  RsdePath zigzag = scalar_path({0, 1, 2}, {0, 1, 0});
  size_t count = 0, dim = 0;
  CHECK(rsde_path_shape(zigzag, &count, &dim) == RSDE_SUCCESS);
  CHECK(count == 3);
  CHECK(dim == 1);

  double v = -1;
  CHECK(rsde_path_p_variation(zigzag, 1.0, 0, 2, &v) == RSDE_SUCCESS);
  CHECK(v == doctest::Approx(2.0));
  CHECK(rsde_path_variation_norm(zigzag, 2.0, 0, 2, &v) == RSDE_SUCCESS);
  CHECK(v == doctest::Approx(std::sqrt(2.0)));
  CHECK(rsde_path_eval(zigzag, 1.5, &v) == RSDE_SUCCESS);
  CHECK(v == 1.0);
  CHECK(rsde_path_left_limit(zigzag, 1.0, &v) == RSDE_SUCCESS);
  CHECK(v == 0.0);

  CHECK(rsde_path_p_variation(zigzag, 0.5, 0, 2, &v) == RSDE_INVALID_P);
  CHECK(std::string(rsde_status_name(RSDE_INVALID_P)) == "InvalidP");
  CHECK(std::strlen(rsde_last_error()) > 0);

  RsdePath running = nullptr;
  CHECK(rsde_path_running_max(zigzag, &running) == RSDE_SUCCESS);
  std::vector<double> times(3), values(3);
  CHECK(rsde_path_copy_data(running, times.data(), values.data()) == RSDE_SUCCESS);
  CHECK(values == std::vector<double>{0, 1, 1});

  char* csv = nullptr;
  CHECK(rsde_path_to_csv(zigzag, &csv) == RSDE_SUCCESS);
  CHECK(take(csv) == "t,x1\n0,0\n1,1\n2,0\n");

  rsde_path_destroy(running);
  rsde_path_destroy(zigzag);
}

TEST_CASE("errors and null handles") {
  std::vector<double> times{0, 1, 1};
  std::vector<double> values{0, 1, 2};
  RsdePath path = nullptr;
  CHECK(rsde_path_create(times.data(), 3, values.data(), 1, &path) == RSDE_NON_MONOTONE_GRID);
  CHECK(path == nullptr);
  double v = 0;
  CHECK(rsde_path_p_variation(nullptr, 2.0, 0, 1, &v) == RSDE_INVALID_HANDLE);
  CHECK(rsde_path_destroy(nullptr) == RSDE_INVALID_HANDLE);
  CHECK(rsde_path_read_csv("/nonexistent.csv", &path) == RSDE_IO_ERROR);
  CHECK(rsde_zeta(1.0, &v) == RSDE_DOMAIN_ERROR);
  CHECK(rsde_zeta(2.0, &v) == RSDE_SUCCESS);
  CHECK(std::abs(v - M_PI * M_PI / 6) < 1e-12);
  CHECK(rsde_fbm_sample(0.4, 1, 16, 0, 0, &path) == RSDE_INVALID_HURST);
  RsdeScenario scenario;
  CHECK(rsde_scenario_preset("nope", &scenario) == RSDE_UNKNOWN_KIND);
  for (int s = 0; s <= RSDE_UNKNOWN_ERROR; ++s) CHECK(std::strlen(rsde_status_name(static_cast<RsdeStatus>(s))) > 0);
}

TEST_CASE("reflection through the C interface") {
  RsdePath y = scalar_path({0, 1, 2}, {1, -1, 2});
  RsdePath l = scalar_path({0}, {0});
  RsdePath x = nullptr, k = nullptr;
  CHECK(rsde_skorokhod_solve(y, l, &x, &k) == RSDE_SUCCESS);
  std::vector<double> kv(3), xv(3);
  rsde_path_copy_data(k, nullptr, kv.data());
  rsde_path_copy_data(x, nullptr, xv.data());
  CHECK(kv == std::vector<double>{0, 1, 1});
  CHECK(xv == std::vector<double>{1, 0, 3});

  char* csv = nullptr;
  int pass = 0;
  CHECK(rsde_skorokhod_check(y, l, x, l, 2.0, &csv, &pass) == RSDE_SUCCESS);
  CHECK(pass == 1);
  CHECK(take(csv).rfind("id,lhs,rhs,margin,pass", 0) == 0);

  rsde_path_destroy(x);
  rsde_path_destroy(k);
  RsdePath high = scalar_path({0}, {5});
  x = k = nullptr;
  CHECK(rsde_skorokhod_solve(y, high, &x, &k) == RSDE_BARRIER_ABOVE_START);
  CHECK(x == nullptr);
  for (auto* p : {y, l, high}) rsde_path_destroy(p);
}

TEST_CASE("problems and solutions") {
  RsdeScenario scenario;
  REQUIRE(rsde_scenario_preset("geometric", &scenario) == RSDE_SUCCESS);
  CHECK(std::string(scenario.coefficients) == "geometric");
  RsdeProblem problem = nullptr;
  REQUIRE(rsde_problem_create(&scenario, 0, 0, &problem) == RSDE_SUCCESS);

  RsdeSolution solution = nullptr;
  REQUIRE(rsde_solve_fixed(problem, RSDE_SCHEME_UNIFORM, 1024, &solution) == RSDE_SUCCESS);
  RsdePath x = nullptr;
  CHECK(rsde_solution_paths(solution, &x, nullptr) == RSDE_SUCCESS);
  double x1 = 0;
  rsde_path_eval(x, 1.0, &x1);
  CHECK(std::abs(x1 - M_E) < 5e-3);
  int pass = 0;
  char* report = nullptr;
  CHECK(rsde_solution_a_priori_check(solution, problem, &report, &pass) == RSDE_SUCCESS);
  CHECK(pass == 1);
  rsde_free_string(report);
  rsde_path_destroy(x);
  rsde_solution_destroy(solution);

  CHECK(rsde_solve(problem, 0.0, 16, &solution) == RSDE_NO_CONVERGENCE);
  REQUIRE(rsde_solve(problem, 1e-2, 16, &solution) == RSDE_SUCCESS);
  char* csv = nullptr;
  CHECK(rsde_solution_to_csv(solution, -1, 1, &csv) == RSDE_SUCCESS);
  const std::string text = take(csv);
  CHECK(text.rfind("t,x1,k1\n", 0) == 0);
  CHECK(text.find("# scheme=adaptive") != std::string::npos);
  rsde_solution_destroy(solution);

  CHECK(rsde_convergence_csv(problem, 16, 4, &csv) == RSDE_SUCCESS);
  CHECK(take(csv).rfind("n,gap,seconds\n16,nan,", 0) == 0);
  rsde_problem_destroy(problem);

  scenario.hurst = 0.3;
  CHECK(rsde_problem_create(&scenario, 0, 0, &problem) == RSDE_INVALID_HURST);
}

TEST_CASE("campaign through the C interface") {
  RsdeCampaignOptions options{40, 7, 1e-9, 0};
  char* csv = nullptr;
  size_t violations = 99;
  CHECK(rsde_verify_campaign(&options, &csv, &violations) == RSDE_SUCCESS);
  CHECK(violations == 0);
  CHECK(take(csv).find("# violations=0") != std::string::npos);
  options.corrupt_solver = 1;
  CHECK(rsde_verify_campaign(&options, nullptr, &violations) == RSDE_SUCCESS);
  CHECK(violations > 0);
}

TEST_CASE("handles are shareable and errors are per thread") {
  RsdeScenario scenario;
  rsde_scenario_preset("rotation-fbm", &scenario);
  scenario.driver_steps = 256;
  std::vector<std::string> serial(4), parallel(4);
  auto run = [&](std::vector<std::string>& out, size_t r) {
    RsdeProblem problem = nullptr;
    rsde_problem_create(&scenario, 11, r, &problem);
    RsdeSolution solution = nullptr;
    rsde_solve_fixed(problem, RSDE_SCHEME_ADAPTIVE, 64, &solution);
    char* csv = nullptr;
    rsde_solution_to_csv(solution, static_cast<int64_t>(r), 1, &csv);
    out[r] = take(csv);
    rsde_solution_destroy(solution);
    rsde_problem_destroy(problem);
  };
  for (size_t r = 0; r < 4; ++r) run(serial, r);
  std::vector<std::thread> threads;
  for (size_t r = 0; r < 4; ++r) threads.emplace_back(run, std::ref(parallel), r);
  for (auto& t : threads) t.join();
  CHECK(serial == parallel);

  double v = 0;
  CHECK(rsde_zeta(0.5, &v) == RSDE_DOMAIN_ERROR);
  std::thread([&] { CHECK(std::strlen(rsde_last_error()) == 0); }).join();
  CHECK(std::strlen(rsde_last_error()) > 0);
}
