#include "rsde/scenario.hpp"

#include <cmath>
#include <numbers>

#include "rsde/drivers.hpp"
#include "rsde/error.hpp"

namespace rsde {

ScenarioConfig scenario_preset(const std::string& name) {
  ScenarioConfig config;
  if (name == "linear-reflected") {
    config.coefficients = "identity";
    config.driver = "fbm";
    config.fv_driver = "zero";
    config.barrier = "constant";
    return config;
  }
  if (name == "geometric") {
    config.coefficients = "geometric";
    config.driver = "linear";
    config.fv_driver = "zero";
    config.barrier = "constant";
    config.barrier_level = -1e6;
    config.x0 = 1.0;
    config.driver_steps = 4096;
    return config;
  }
  if (name == "degenerate") {
    config.coefficients = "tanh";
    config.driver = "zero";
    config.fv_driver = "zero";
    config.barrier = "constant";
    config.x0 = 0.5;
    return config;
  }
  if (name == "tanh-fbm") {
    config.coefficients = "tanh";
    config.driver = "fbm";
    config.fv_driver = "linear";
    config.barrier = "sine";
    config.barrier_level = -0.25;
    config.barrier_amplitude = 0.25;
    config.x0 = 0.5;
    return config;
  }
  if (name == "rotation-fbm") {
    config.coefficients = "rotation";
    config.dim = 2;
    config.driver = "fbm";
    config.fv_driver = "linear";
    config.barrier = "jump";
    config.barrier_level = -0.5;
    config.jump_size = 0.75;
    config.sigma = "sine";
    return config;
  }
  fail(ErrorCode::UnknownKind, "unknown preset '" + name + "'");
}

std::vector<std::string> scenario_preset_names() {
  return {"linear-reflected", "geometric", "degenerate", "tanh-fbm", "rotation-fbm"};
}

void validate(const ScenarioConfig& config) {
  if (!(config.hurst > 0.5 && config.hurst < 1.0)) {
    fail(ErrorCode::InvalidHurst, "Hurst index must lie in (0.5, 1), got " + std::to_string(config.hurst));
  }
  if (!(config.p >= 1.0)) {
    fail(ErrorCode::InvalidP, "p must be at least 1");
  }
  if (config.dim == 0) {
    fail(ErrorCode::DimensionMismatch, "dimension must be at least 1");
  }
  if (!(config.horizon > 0.0) || !std::isfinite(config.horizon) || config.driver_steps == 0) {
    fail(ErrorCode::InvalidParameter, "horizon must be positive and driver_steps at least 1");
  }
  if (config.driver != "fbm" && config.driver != "linear" && config.driver != "jump" && config.driver != "zero") {
    fail(ErrorCode::UnknownKind, "unknown driver '" + config.driver + "'");
  }
  if (config.sigma != "one" && config.sigma != "step" && config.sigma != "sine") {
    fail(ErrorCode::UnknownKind, "unknown volatility '" + config.sigma + "'");
  }
  parse_fv_kind(config.fv_driver);
  parse_barrier_kind(config.barrier);
  make_coefficients(config.coefficients, config.dim);
}

std::vector<double> volatility_samples(const std::string& preset, const std::vector<double>& grid, double horizon) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) {
    if (preset == "one") {
      out.push_back(1.0);
    } else if (preset == "step") {
      out.push_back(t < 0.5 * horizon ? 2.0 : 0.0);
    } else if (preset == "sine") {
      out.push_back(1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t / horizon));
    } else {
      fail(ErrorCode::UnknownKind, "unknown volatility '" + preset + "'");
    }
  }
  return out;
}

Problem build_problem(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t replicate) {
  validate(config);
  const std::size_t d = config.dim;
  DriverParams params;
  params.horizon = config.horizon;
  params.steps = config.driver_steps;
  params.level = config.barrier_level;
  params.amplitude = config.barrier_amplitude;
  params.frequency = config.barrier_frequency;
  params.jump_time = config.jump_time;
  params.jump_size = config.jump_size;

  StepPath z = StepPath::constant(Vector::Zero(static_cast<Eigen::Index>(d)));
  if (config.driver == "fbm") {
    const FbmSpec spec{config.hurst, config.horizon, config.driver_steps, seed};
    CirculantFbm circulant(spec);
    std::vector<StepPath> components;
    components.reserve(d);
    const auto grid = uniform_grid(config.horizon, config.driver_steps);
    VolatilitySpec vol;
    for (std::size_t i = 0; i < d; ++i) {
      const auto component = static_cast<std::uint32_t>(i);
      components.push_back(circulant.embeddable() ? circulant.sample(replicate, component)
                                                  : CholeskyFbm(spec).sample(replicate, component));
      vol.sigma.push_back(volatility_samples(config.sigma, grid, config.horizon));
    }
    z = build_zh(components, vol);
  } else if (config.driver == "linear") {
    auto grid = uniform_grid(config.horizon, config.driver_steps);
    std::vector<double> values;
    values.reserve(grid.size() * d);
    for (double t : grid) values.insert(values.end(), d, t);
    z = StepPath::make(std::move(grid), std::move(values), d);
  } else if (config.driver == "jump") {
    if (!(config.jump_time > 0.0)) {
      fail(ErrorCode::InvalidParameter, "jump time must be positive");
    }
    std::vector<double> values(2 * d, 0.0);
    std::fill(values.begin() + static_cast<std::ptrdiff_t>(d), values.end(), config.jump_size);
    z = StepPath::make({0.0, config.jump_time}, std::move(values), d);
  }

  Problem problem{Vector::Constant(static_cast<Eigen::Index>(d), config.x0),
                  make_fv_driver(parse_fv_kind(config.fv_driver), params),
                  std::move(z),
                  make_barrier(parse_barrier_kind(config.barrier), params, d),
                  make_coefficients(config.coefficients, d),
                  config.p,
                  config.horizon};
  validate(problem);
  return problem;
}

}  // namespace rsde
