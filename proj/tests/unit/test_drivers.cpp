#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rsde/drivers.hpp"
#include "rsde/error.hpp"

using namespace rsde;

namespace {

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Success;
}

std::vector<double> values_of(const StepPath& path) { return {path.values().begin(), path.values().end()}; }

}  // namespace

TEST_CASE("fractional Gaussian noise covariance") {
  CHECK(fgn_autocovariance(0.75, 0) == doctest::Approx(1.0));
  CHECK(fgn_autocovariance(0.5 + 1e-12, 3) == doctest::Approx(0.0).epsilon(1e-9));
  const double h = 0.8;
  CHECK(fgn_autocovariance(h, 2) ==
        doctest::Approx(0.5 * (std::pow(3.0, 2 * h) - 2 * std::pow(2.0, 2 * h) + 1.0)));
}

TEST_CASE("specification checks") {
  CHECK(code_of([] { validate(FbmSpec{0.4, 1.0, 16, 0}); }) == ErrorCode::InvalidHurst);
  CHECK(code_of([] { validate(FbmSpec{0.5, 1.0, 16, 0}); }) == ErrorCode::InvalidHurst);
  CHECK(code_of([] { validate(FbmSpec{1.0, 1.0, 16, 0}); }) == ErrorCode::InvalidHurst);
  CHECK(code_of([] { validate(FbmSpec{0.7, 1.0, 0, 0}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(FbmSpec{0.7, -1.0, 8, 0}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("sampling is deterministic and keyed by seed, index and component") {
  const FbmSpec spec{0.7, 2.0, 64, 9};
  auto a = sample_fbm(spec, 3, 1);
  auto b = sample_fbm(spec, 3, 1);
  CHECK(values_of(a) == values_of(b));
  CHECK(values_of(a) != values_of(sample_fbm(spec, 4, 1)));
  CHECK(values_of(a) != values_of(sample_fbm(spec, 3, 0)));
  CHECK(values_of(a) != values_of(sample_fbm({0.7, 2.0, 64, 10}, 3, 1)));
  CHECK(a.size() == 65);
  CHECK(a.horizon() == 2.0);
  CHECK(a.value(0, 0) == 0.0);
}

TEST_CASE("circulant embedding is nonnegative for the usual Hurst range") {
  for (double h : {0.55, 0.6, 0.75, 0.9, 0.99}) {
    CirculantFbm sampler({h, 1.0, 4096, 0});
    CHECK(sampler.embeddable());
    CHECK(sampler.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("both samplers reproduce the covariance") {
  const double h = 0.75;
  const std::size_t n = 32;
  const FbmSpec spec{h, 1.0, n, 1};
  CirculantFbm circulant(spec);
  CholeskyFbm cholesky(spec);
  const int paths = 4000;
  for (auto* which : {"circulant", "cholesky"}) {
    std::vector<double> end, half, lag1;
    for (int i = 0; i < paths; ++i) {
      auto b = std::string(which) == "circulant" ? circulant.sample(i) : cholesky.sample(i);
      end.push_back(b.value(n, 0));
      half.push_back(b.value(n / 2, 0));
      lag1.push_back(b.value(n / 2 + 1, 0) - b.value(n / 2, 0));
    }
    INFO(which);
    CHECK(std::abs(oracle::mean_variance(end).second - 1.0) < 0.08);
    CHECK(std::abs(oracle::mean_variance(half).second - std::pow(0.5, 2 * h)) < 0.05);
    const double step = std::pow(1.0 / n, 2 * h);
    CHECK(std::abs(oracle::mean_variance(lag1).second / step - 1.0) < 0.08);
    double cov = 0.0;
    for (int i = 0; i < paths; ++i) cov += end[i] * half[i];
    cov /= paths;
    const double expected = 0.5 * (1.0 + std::pow(0.5, 2 * h) - std::pow(0.5, 2 * h));
    CHECK(std::abs(cov - expected) < 0.05);
  }
}

TEST_CASE("scaled volatility integrals") {
  const FbmSpec spec{0.75, 1.0, 64, 2};
  std::vector<StepPath> b{sample_fbm(spec, 0, 0), sample_fbm(spec, 0, 1)};
  auto grid = uniform_grid(1.0, 64);

  auto one = build_zh(b, {{std::vector<double>(grid.size(), 1.0), std::vector<double>(grid.size(), 1.0)}});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one.value(i, 0) == doctest::Approx(b[0].value(i, 0)).epsilon(1e-12));
    CHECK(one.value(i, 1) == doctest::Approx(b[1].value(i, 0)).epsilon(1e-12));
  }

  auto zero = build_zh(b, {{std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)}});
  CHECK(sup_norm(zero) == 0.0);

  std::vector<double> step;
  for (double t : grid) step.push_back(t < 0.5 ? 2.0 : 0.0);
  auto stepped = build_zh(b, {{step, step}});
  CHECK(stepped.eval(1.0)(0) == doctest::Approx(2.0 * b[0].eval(0.5)(0)).epsilon(1e-12));

  CHECK(code_of([&] { build_zh(b, {{step}}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { build_zh(b, {{step, std::vector<double>(3, 1.0)}}); }) == ErrorCode::LengthMismatch);
  std::vector<StepPath> mixed{b[0], sample_fbm({0.75, 1.0, 32, 2})};
  CHECK(code_of([&] { build_zh(mixed, {{step, step}}); }) == ErrorCode::GridMismatch);
}

TEST_CASE("dyadic p-variation profile") {
  auto grid = uniform_grid(1.0, 256);
  auto linear = StepPath::scalar(grid, grid);
  auto profile = empirical_pvar_profile(linear, 2.0, 6);
  REQUIRE(profile.size() == 6);
  // A monotone path attains its p-variation with one increment at every level.
  for (double v : profile) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  auto fbm = sample_fbm({0.75, 1.0, 1024, 3});
  auto coarse_to_fine = empirical_pvar_profile(fbm, 1.0, 6);
  for (std::size_t j = 1; j < coarse_to_fine.size(); ++j) CHECK(coarse_to_fine[j] >= coarse_to_fine[j - 1]);
}

TEST_CASE("deterministic builders") {
  DriverParams params;
  params.steps = 4;
  auto linear = make_fv_driver(FvKind::Linear, params);
  CHECK(values_of(linear) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK(std::vector<double>(linear.times().begin(), linear.times().end()) ==
        std::vector<double>{0, 0.25, 0.5, 0.75, 1});

  auto barrier = make_barrier(BarrierKind::Constant, params, 3);
  CHECK(barrier.dim() == 3);
  CHECK(sup_norm(barrier) == 0.0);

  params.jump_time = 0.5;
  params.jump_size = 1.0;
  auto jump = make_fv_driver(FvKind::Jump, params);
  CHECK(p_variation_seminorm(jump, 1.0) == 1.0);
  CHECK(jump.eval(0.5)(0) == 1.0);
  CHECK(jump.left_limit(0.5)(0) == 0.0);

  auto sine = make_barrier(BarrierKind::Sine, params, 1);
  CHECK(sine.eval(0.25)(0) == doctest::Approx(0.5));

  auto up = make_barrier(BarrierKind::Jump, params, 2);
  CHECK(up.eval(0.75)(1) == 1.0);

  CHECK(code_of([] { parse_fv_kind("cubic"); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { parse_barrier_kind("wall"); }) == ErrorCode::UnknownKind);
  CHECK(parse_barrier_kind("sine") == BarrierKind::Sine);

  auto g = uniform_grid(1.0, 3);
  CHECK(g.back() == 1.0);
  CHECK(g.size() == 4);
}
