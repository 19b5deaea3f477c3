#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsde/sde.hpp"

namespace rsde {

/// Named building blocks for a reflected equation; see `build_problem`.
struct ScenarioConfig {
  std::string coefficients = "identity";  // zero | identity | geometric | tanh | rotation
  std::string driver = "fbm";             // fbm | linear | jump | zero
  std::string fv_driver = "zero";         // zero | linear | jump
  std::string barrier = "constant";       // constant | sine | jump
  std::string sigma = "one";              // one | step | sine
  std::size_t dim = 1;
  double hurst = 0.75;
  double horizon = 1.0;
  std::size_t driver_steps = 1024;
  double x0 = 0.0;  // every component
  double barrier_level = 0.0;
  double barrier_amplitude = 0.5;
  double barrier_frequency = 1.0;
  double jump_time = 0.5;
  double jump_size = 1.0;
  double p = 2.0;
};

/// Presets: linear-reflected, geometric, degenerate, tanh-fbm, rotation-fbm.
ScenarioConfig scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

/// Throws InvalidHurst, UnknownKind, InvalidParameter or DimensionMismatch.
void validate(const ScenarioConfig& config);

/// Volatility samples sigma(t) on `grid` for the named preset:
/// one (1), step (2 on [0, T/2), 0 after), sine (1 + sin(2 pi t / T) / 2).
std::vector<double> volatility_samples(const std::string& preset, const std::vector<double>& grid, double horizon);

/// Builds the problem for replicate `replicate`. The fBm component i draws
/// from stream (seed, replicate, i), so replicates are independent of
/// scheduling.
Problem build_problem(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t replicate);

}  // namespace rsde
