#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rsde/path.hpp"

namespace rsde {

/// Fractional Brownian motion on the uniform grid {k T / n : k = 0..n}.
struct FbmSpec {
  double hurst = 0.75;
  double horizon = 1.0;
  std::size_t steps = 1024;
  std::uint64_t seed = 0;
};

/// Throws InvalidHurst unless 1/2 < H < 1, InvalidParameter for a bad grid.
void validate(const FbmSpec& spec);

/// Autocovariance of unit-step fractional Gaussian noise at integer lag k:
/// (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double fgn_autocovariance(double hurst, std::size_t lag);

/// Exact sampler by circulant embedding of the increment covariance,
/// padded to a power of two (Davies–Harte / Wood–Chan).
class CirculantFbm {
 public:
  explicit CirculantFbm(const FbmSpec& spec);

  /// False when an embedding eigenvalue falls below -1e-10.
  bool embeddable() const { return embeddable_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

  /// Path for stream (seed, path_index, component).
  StepPath sample(std::uint64_t path_index, std::uint32_t component = 0) const;

 private:
  FbmSpec spec_;
  std::size_t embedding_size_ = 0;
  std::vector<double> sqrt_eigenvalues_;
  double min_eigenvalue_ = 0.0;
  bool embeddable_ = true;
};

/// Exact sampler by dense Cholesky factorization of the increment covariance.
class CholeskyFbm {
 public:
  explicit CholeskyFbm(const FbmSpec& spec);

  StepPath sample(std::uint64_t path_index, std::uint32_t component = 0) const;

 private:
  FbmSpec spec_;
  Matrix factor_;
};

/// Circulant sampler, falling back to Cholesky when the embedding is not
/// nonnegative definite. Deterministic in (spec.seed, path_index, component).
StepPath sample_fbm(const FbmSpec& spec, std::uint64_t path_index = 0, std::uint32_t component = 0);

/// Per-component volatility samples on the simulation grid.
struct VolatilitySpec {
  std::vector<std::vector<double>> sigma;
};

/// Z^i = sum of sigma^i_{t_k} (B^i_{t_{k+1}} - B^i_{t_k}): left-point sums
/// of each volatility against its own scalar fBm component.
StepPath build_zh(std::span<const StepPath> fbm_components, const VolatilitySpec& vol);

/// V_p of the path restricted to nested dyadic sub-grids. Entry j uses every
/// 2^{levels-1-j}-th grid point (and the last point), so the final entry is the
/// full path.
std::vector<double> empirical_pvar_profile(const StepPath& path, double p, std::size_t levels);

enum class FvKind { Zero, Linear, Jump };
enum class BarrierKind { Constant, Sine, Jump };

/// Shared parameters for the deterministic driver and barrier builders.
struct DriverParams {
  double horizon = 1.0;
  std::size_t steps = 1024;
  double level = 0.0;       // barrier base level
  double amplitude = 0.5;   // sine barrier amplitude
  double frequency = 1.0;   // sine barrier cycles per unit time
  double jump_time = 0.5;
  double jump_size = 1.0;
};

FvKind parse_fv_kind(std::string_view name);
BarrierKind parse_barrier_kind(std::string_view name);

/// Zero: a = 0. Linear: a_t = t sampled on `steps` cells. Jump: a single jump
/// of jump_size at jump_time.
StepPath make_fv_driver(FvKind kind, const DriverParams& params);

/// Constant: level. Sine: level + amplitude sin(2 pi frequency t) sampled.
/// Jump: level, raised by jump_size at jump_time. Same in every component.
StepPath make_barrier(BarrierKind kind, const DriverParams& params, std::size_t dim);

/// Uniform grid {k T / n : k = 0..n}.
std::vector<double> uniform_grid(double horizon, std::size_t steps);

}  // namespace rsde
