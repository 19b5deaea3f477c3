#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rsde/error.hpp"
#include "rsde/rng.hpp"
#include "rsde/verify.hpp"
#include "rsde/young.hpp"

using namespace rsde;

namespace {

MatrixStepPath scalar_integrand(std::vector<double> times, const std::vector<double>& values) {
  std::vector<Matrix> ms;
  for (double v : values) ms.push_back(Matrix::Constant(1, 1, v));
  return MatrixStepPath::make(std::move(times), ms);
}

double max_distance(const StepPath& a, const StepPath& b) { return sup_norm(a - b); }

}  // namespace

TEST_CASE("zeta against closed forms and an independent bracket") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(zeta(2.0) - pi * pi / 6.0) < 1e-12);
  CHECK(std::abs(zeta(4.0) - std::pow(pi, 4) / 90.0) < 1e-12);
  CHECK(std::abs(zeta(1.5) - 2.6123753486854883) < 1e-11);
  for (double s : {1.05, 1.2, 1.5, 1.9, 2.5, 3.3, 6.0}) {
    CHECK(std::abs(zeta(s) - std::riemann_zeta(s)) < 1e-10 * std::riemann_zeta(s));
    const auto [lower, upper] = oracle::zeta_bracket(s, 200000);
    CHECK(zeta(s) >= lower - 1e-12);
    CHECK(zeta(s) <= upper + 1e-12);
  }
  CHECK_THROWS_AS(zeta(1.0), Error);
  CHECK_THROWS_AS(zeta(0.5), Error);
}

TEST_CASE("Young constant") {
  auto b = young_bound(2.0, 2.0);
  CHECK_FALSE(b.valid);
  auto c = young_bound(1.5, 1.5);
  CHECK(c.valid);
  CHECK(c.constant == doctest::Approx(std::riemann_zeta(4.0 / 3.0)));
  try {
    young_bound(0.5, 2.0);
    FAIL("expected InvalidExponents");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidExponents);
  }
}

TEST_CASE("Riemann-Stieltjes fixtures") {
  auto integral = rs_integral(scalar_integrand({0, 1}, {1, 2}), StepPath::scalar({0, 1, 2}, {0, 1, 3}));
  CHECK(integral.eval(2.0)(0) == 5.0);
  CHECK(integral.eval(1.0)(0) == 1.0);
  CHECK(integral.eval(0.5)(0) == 0.0);

  CounterRng rng(31, 0);
  auto z = random_step_path(rng, 30, 2);
  auto id = rs_integral(MatrixStepPath::constant(Matrix::Identity(2, 2)), z);
  for (double t : z.times()) CHECK((id.eval(t) - (z.eval(t) - z.eval(0))).norm() < 1e-12);

  auto scaled = rs_integral(MatrixStepPath::constant(-1.5 * Matrix::Identity(2, 2)), z, {0.3, 0.8});
  for (double t : {0.0, 0.3, 0.5, 0.8, 1.0}) {
    const double s = std::clamp(t, 0.3, 0.8);
    CHECK((scaled.eval(t) + 1.5 * (z.eval(s) - z.eval(0.3))).norm() < 1e-12);
  }

  auto flat = rs_integral(random_matrix_path(rng, 20, 2), StepPath::constant(Vector::Ones(2)));
  CHECK(sup_norm(flat) == 0.0);
}

TEST_CASE("linearity and additivity") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    CounterRng rng(32, i);
    const std::size_t d = 1 + i % 2;
    auto x = random_matrix_path(rng, 20, d);
    auto z1 = random_step_path(rng, 20, d);
    auto z2 = random_step_path(rng, 20, d);
    auto sum = rs_integral(x, z1 + 2.0 * z2);
    auto parts = rs_integral(x, z1) + 2.0 * rs_integral(x, z2);
    CHECK(max_distance(sum, parts) < 1e-10);

    const double b = rng.uniform();
    auto left = rs_integral(x, z1, {0, b});
    auto right = rs_integral(x, z1, {b, 1});
    auto whole = rs_integral(x, z1, {0, 1});
    CHECK((left.eval(1) + right.eval(1) - whole.eval(1)).norm() < 1e-10);
  }
}

TEST_CASE("Young bound holds on random pairs") {
  const std::pair<double, double> exponents[] = {{1.5, 1.5}, {2, 1.2}, {1.2, 2}, {3, 1.1}, {1.8, 1.8}};
  for (std::uint64_t i = 0; i < 300; ++i) {
    CounterRng rng(33, i);
    const std::size_t d = 1 + i % 2;
    auto x = random_matrix_path(rng, 30, d);
    auto z = random_step_path(rng, 30, d);
    const auto [p, q] = exponents[i % 5];
    const double a = 0.5 * rng.uniform();
    const double b = a + (1 - a) * rng.uniform();
    auto check = young_bound_check(x, z, p, q, {a, b});
    INFO("p=" << p << " q=" << q << " lhs=" << check.lhs << " rhs=" << check.rhs);
    CHECK(check.pass);
  }
  auto zero = young_bound_check(MatrixStepPath::constant(Matrix::Identity(1, 1)),
                                StepPath::constant(Vector::Zero(1)), 1.5, 1.5, {0, 1});
  CHECK(zero.lhs == 0.0);
  CHECK(zero.pass);

  CounterRng rng(34, 0);
  auto z = random_step_path(rng, 30, 1);
  auto c = young_bound_check(MatrixStepPath::constant(Matrix::Constant(1, 1, -3.0)), z, 2.0, 1.5, {0, 1});
  CHECK(c.lhs == doctest::Approx(3.0 * p_variation_seminorm(z, 2.0)));
  CHECK(c.pass);
  CHECK_THROWS_AS(young_bound_check(MatrixStepPath::constant(Matrix::Identity(1, 1)), z, 2.0, 2.0, {0, 1}), Error);
}

TEST_CASE("grid sums") {
  std::vector<Matrix> ms(4, Matrix::Identity(2, 2));
  std::vector<Vector> zs;
  for (int k = 0; k < 5; ++k) zs.push_back(Vector::Constant(2, k * k));
  // One fewer integrand sample than driver samples is not accepted.
  CHECK_THROWS_AS(grid_riemann_sum(ms, zs), Error);
  ms.push_back(Matrix::Identity(2, 2));
  auto sums = grid_riemann_sum(ms, zs);
  for (std::size_t k = 0; k < zs.size(); ++k) CHECK((sums[k] - (zs[k] - zs[0])).norm() == 0.0);

  std::vector<Matrix> one{2.0 * Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
  std::vector<Vector> two{Vector::Zero(2), Vector::Ones(2)};
  CHECK((grid_riemann_sum(one, two)[1] - Vector::Constant(2, 2.0)).norm() == 0.0);

  CounterRng rng(35, 0);
  auto x = random_matrix_path(rng, 15, 2);
  auto z = random_step_path(rng, 15, 2);
  auto grid = merge_grids(std::vector<std::span<const double>>{x.times(), z.times()});
  auto xs = x.resample(grid);
  auto zr = z.resample(grid);
  std::vector<Matrix> xm;
  std::vector<Vector> zv;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    xm.emplace_back(xs.point(i));
    zv.emplace_back(zr.point(i));
  }
  auto s = grid_riemann_sum(xm, zv);
  auto integral = rs_integral(x, z);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK((s[i] - integral.eval(grid[i])).norm() < 1e-12);
}

TEST_CASE("integrals against coarsened drivers converge") {
  CounterRng rng(36, 0);
  auto x = random_matrix_path(rng, 40, 1);
  auto z = random_step_path(rng, 60, 1);
  auto exact = rs_integral(x, z);
  double previous = INFINITY;
  for (int k = 1; k <= 12; ++k) {
    const double h = std::ldexp(1.0, -k);
    auto coarse = rs_integral(x, coarsen_jump_adapted(z, h, h, 1.0));
    const double err = max_distance(exact, coarse);
    CHECK(err <= previous + 1e-12);
    previous = err;
  }
  CHECK(previous < 1e-12);
}
