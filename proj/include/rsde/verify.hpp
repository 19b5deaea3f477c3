#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rsde/path.hpp"
#include "rsde/rng.hpp"

namespace rsde {

/// Random step path with 1..max_points grid points on [0, horizon]: Gaussian
/// increments mixed with repeated values and occasional large jumps.
StepPath random_step_path(CounterRng& rng, std::size_t max_points, std::size_t dim, double horizon = 1.0);
MatrixStepPath random_matrix_path(CounterRng& rng, std::size_t max_points, std::size_t dim, double horizon = 1.0);

struct CampaignOptions {
  std::size_t cases = 1000;
  std::uint64_t seed = 7;
  double relative_slack = 1e-9;
  std::size_t max_points = 60;
  /// Negative control: halves the regulator of every reflection before checking.
  bool corrupt_solver = false;
};

struct CampaignRow {
  std::size_t case_index = 0;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::map<std::string, std::pair<std::size_t, std::size_t>> summary;  // check -> (passed, total)
  std::size_t violations = 0;
};

/// Randomized cases, each checking: the reflection conditions, the Lipschitz
/// and a-priori estimates of the reflection map, the running-maximum
/// contraction in p-variation, and the Young bound. Case i draws from stream
/// (seed, i).
CampaignResult run_campaign(const CampaignOptions& options);

/// `case,check,lhs,rhs,margin,pass` rows followed by `# summary` lines.
std::string campaign_to_csv(const CampaignResult& result);

}  // namespace rsde
