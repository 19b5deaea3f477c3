#include "rsde/drivers.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "rsde/error.hpp"
#include "rsde/rng.hpp"
#include "rsde/young.hpp"

namespace rsde {
namespace {

constexpr double kNegativeEigenvalueTolerance = 1e-10;
constexpr double kCholeskyJitter = 1e-12;

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

StepPath cumulate(const FbmSpec& spec, const std::vector<double>& increments) {
  std::vector<double> values(spec.steps + 1, 0.0);
  for (std::size_t k = 0; k < spec.steps; ++k) {
    values[k + 1] = values[k] + increments[k];
  }
  return StepPath::scalar(uniform_grid(spec.horizon, spec.steps), std::move(values));
}

double increment_scale(const FbmSpec& spec) {
  return std::pow(spec.horizon / static_cast<double>(spec.steps), spec.hurst);
}

}  // namespace

std::vector<double> uniform_grid(double horizon, std::size_t steps) {
  if (steps == 0 || !(horizon > 0.0) || !std::isfinite(horizon)) {
    fail(ErrorCode::InvalidParameter, "uniform grid needs steps >= 1 and a positive horizon");
  }
  std::vector<double> times(steps + 1);
  const double n = static_cast<double>(steps);
  for (std::size_t k = 0; k <= steps; ++k) {
    times[k] = horizon * static_cast<double>(k) / n;
  }
  times[steps] = horizon;
  return times;
}

void validate(const FbmSpec& spec) {
  if (!(spec.hurst > 0.5 && spec.hurst < 1.0)) {
    fail(ErrorCode::InvalidHurst, "Hurst index must lie in (0.5, 1), got " + std::to_string(spec.hurst));
  }
  if (spec.steps == 0 || !(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) {
    fail(ErrorCode::InvalidParameter, "fBm grid needs steps >= 1 and a positive horizon");
  }
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

// ---------------------------------------------------------------------------
// Circulant embedding

CirculantFbm::CirculantFbm(const FbmSpec& spec) : spec_(spec) {
  validate(spec);
  const std::size_t m = next_power_of_two(spec.steps);
  embedding_size_ = 2 * m;
  std::vector<std::complex<double>> row(embedding_size_);
  for (std::size_t k = 0; k <= m; ++k) {
    row[k] = fgn_autocovariance(spec.hurst, k);
  }
  for (std::size_t k = 1; k < m; ++k) {
    row[embedding_size_ - k] = row[k];
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, row);

  const double size = static_cast<double>(embedding_size_);
  sqrt_eigenvalues_.resize(embedding_size_);
  min_eigenvalue_ = spectrum[0].real();
  for (std::size_t k = 0; k < embedding_size_; ++k) {
    const double lambda = spectrum[k].real();
    min_eigenvalue_ = std::min(min_eigenvalue_, lambda);
    const double clipped = std::max(lambda, 0.0);
    const bool real_mode = (k == 0 || k == m);
    sqrt_eigenvalues_[k] = std::sqrt(clipped / (real_mode ? size : 2.0 * size));
  }
  embeddable_ = min_eigenvalue_ >= -kNegativeEigenvalueTolerance;
}

StepPath CirculantFbm::sample(std::uint64_t path_index, std::uint32_t component) const {
  if (!embeddable_) {
    fail(ErrorCode::EmbeddingFailure, "circulant embedding has negative eigenvalues");
  }
  CounterRng rng(spec_.seed, path_index, component);
  const std::size_t size = embedding_size_;
  const std::size_t half = size / 2;
  std::vector<std::complex<double>> weights(size);
  weights[0] = sqrt_eigenvalues_[0] * rng.normal();
  for (std::size_t k = 1; k < half; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    weights[k] = sqrt_eigenvalues_[k] * std::complex<double>(re, im);
    weights[size - k] = std::conj(weights[k]);
  }
  weights[half] = sqrt_eigenvalues_[half] * rng.normal();

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> noise;
  fft.fwd(noise, weights);

  const double scale = increment_scale(spec_);
  std::vector<double> increments(spec_.steps);
  for (std::size_t k = 0; k < spec_.steps; ++k) {
    increments[k] = scale * noise[k].real();
  }
  return cumulate(spec_, increments);
}

// ---------------------------------------------------------------------------
// Dense Cholesky

CholeskyFbm::CholeskyFbm(const FbmSpec& spec) : spec_(spec) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.steps);
  std::vector<double> gamma(spec.steps);
  for (std::size_t k = 0; k < spec.steps; ++k) {
    gamma[k] = fgn_autocovariance(spec.hurst, k);
  }
  Matrix covariance(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      covariance(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];
    }
  }
  Eigen::LLT<Matrix> llt(covariance);
  if (llt.info() != Eigen::Success) {
    covariance.diagonal().array() += kCholeskyJitter;
    llt.compute(covariance);
    if (llt.info() != Eigen::Success) {
      fail(ErrorCode::EmbeddingFailure, "fBm increment covariance is not positive definite");
    }
  }
  factor_ = llt.matrixL();
}

StepPath CholeskyFbm::sample(std::uint64_t path_index, std::uint32_t component) const {
  CounterRng rng(spec_.seed, path_index, component);
  Vector white(factor_.rows());
  for (Eigen::Index i = 0; i < white.size(); ++i) {
    white(i) = rng.normal();
  }
  const Vector correlated = factor_.triangularView<Eigen::Lower>() * white;
  const double scale = increment_scale(spec_);
  std::vector<double> increments(spec_.steps);
  for (std::size_t k = 0; k < spec_.steps; ++k) {
    increments[k] = scale * correlated(static_cast<Eigen::Index>(k));
  }
  return cumulate(spec_, increments);
}

StepPath sample_fbm(const FbmSpec& spec, std::uint64_t path_index, std::uint32_t component) {
  CirculantFbm circulant(spec);
  if (circulant.embeddable()) {
    return circulant.sample(path_index, component);
  }
  return CholeskyFbm(spec).sample(path_index, component);
}

// ---------------------------------------------------------------------------

StepPath build_zh(std::span<const StepPath> fbm_components, const VolatilitySpec& vol) {
  if (fbm_components.empty()) {
    fail(ErrorCode::DimensionMismatch, "need at least one fBm component");
  }
  const std::size_t d = fbm_components.size();
  if (vol.sigma.size() != d) {
    fail(ErrorCode::DimensionMismatch, "volatility has " + std::to_string(vol.sigma.size()) +
                                           " components, fBm has " + std::to_string(d));
  }
  const auto grid = fbm_components[0].times();
  for (const auto& component : fbm_components) {
    if (component.dim() != 1) {
      fail(ErrorCode::DimensionMismatch, "fBm components must be scalar paths");
    }
    if (!std::equal(grid.begin(), grid.end(), component.times().begin(), component.times().end())) {
      fail(ErrorCode::GridMismatch, "fBm components live on different grids");
    }
  }
  for (const auto& samples : vol.sigma) {
    if (samples.size() != grid.size()) {
      fail(ErrorCode::LengthMismatch, "volatility samples do not match the grid");
    }
    for (double s : samples) {
      if (!std::isfinite(s)) fail(ErrorCode::NonFiniteValue, "volatility sample is not finite");
    }
  }
  const auto di = static_cast<Eigen::Index>(d);
  std::vector<Matrix> integrand(grid.size(), Matrix::Zero(di, di));
  std::vector<Vector> driver(grid.size(), Vector::Zero(di));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      integrand[k](ii, ii) = vol.sigma[i][k];
      driver[k](ii) = fbm_components[i].value(k, 0);
    }
  }
  const auto sums = grid_riemann_sum(integrand, driver);
  return StepPath::make(std::vector<double>(grid.begin(), grid.end()), sums);
}

std::vector<double> empirical_pvar_profile(const StepPath& path, double p, std::size_t levels) {
  std::vector<double> profile;
  profile.reserve(levels);
  const std::size_t last = path.size() - 1;
  for (std::size_t j = 0; j < levels; ++j) {
    const std::size_t shift = levels - 1 - j;
    const std::size_t stride = shift >= 63 ? last + 1 : (std::size_t{1} << shift);
    std::vector<double> times;
    std::vector<double> values;
    for (std::size_t i = 0; i <= last; i += stride) {
      times.push_back(path.time(i));
      auto point = path.point(i);
      values.insert(values.end(), point.data(), point.data() + path.dim());
      if (last - i < stride) break;
    }
    if (times.back() != path.time(last)) {
      times.push_back(path.time(last));
      auto point = path.point(last);
      values.insert(values.end(), point.data(), point.data() + path.dim());
    }
    profile.push_back(p_variation_seminorm(StepPath::make(std::move(times), std::move(values), path.dim()), p));
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Deterministic builders

FvKind parse_fv_kind(std::string_view name) {
  if (name == "zero") return FvKind::Zero;
  if (name == "linear") return FvKind::Linear;
  if (name == "jump") return FvKind::Jump;
  fail(ErrorCode::UnknownKind, "unknown finite-variation driver '" + std::string(name) + "'");
}

BarrierKind parse_barrier_kind(std::string_view name) {
  if (name == "constant") return BarrierKind::Constant;
  if (name == "sine") return BarrierKind::Sine;
  if (name == "jump") return BarrierKind::Jump;
  fail(ErrorCode::UnknownKind, "unknown barrier '" + std::string(name) + "'");
}

namespace {

void check_jump_time(const DriverParams& params) {
  if (!(params.jump_time > 0.0) || !std::isfinite(params.jump_time)) {
    fail(ErrorCode::InvalidParameter, "jump time must be positive");
  }
}

}  // namespace

StepPath make_fv_driver(FvKind kind, const DriverParams& params) {
  switch (kind) {
    case FvKind::Zero:
      return StepPath::scalar({0.0}, {0.0});
    case FvKind::Linear: {
      auto grid = uniform_grid(params.horizon, params.steps);
      std::vector<double> values(grid);
      return StepPath::scalar(std::move(grid), std::move(values));
    }
    case FvKind::Jump:
      check_jump_time(params);
      return StepPath::scalar({0.0, params.jump_time}, {0.0, params.jump_size});
  }
  fail(ErrorCode::UnknownKind, "unknown finite-variation driver");
}

StepPath make_barrier(BarrierKind kind, const DriverParams& params, std::size_t dim) {
  if (dim == 0) {
    fail(ErrorCode::DimensionMismatch, "barrier dimension must be at least 1");
  }
  std::vector<double> times;
  std::vector<double> scalar;
  switch (kind) {
    case BarrierKind::Constant:
      times = {0.0};
      scalar = {params.level};
      break;
    case BarrierKind::Sine:
      times = uniform_grid(params.horizon, params.steps);
      for (double t : times) {
        scalar.push_back(params.level + params.amplitude * std::sin(2.0 * std::numbers::pi * params.frequency * t));
      }
      break;
    case BarrierKind::Jump:
      check_jump_time(params);
      times = {0.0, params.jump_time};
      scalar = {params.level, params.level + params.jump_size};
      break;
  }
  std::vector<double> values;
  values.reserve(scalar.size() * dim);
  for (double v : scalar) {
    values.insert(values.end(), dim, v);
  }
  return StepPath::make(std::move(times), std::move(values), dim);
}

}  // namespace rsde
