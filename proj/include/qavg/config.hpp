#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qavg/grid.hpp"

namespace qavg {

/// Identity tolerance and the certification ceilings. The ceilings are
/// artifact choices reported alongside every measured constant; they are
/// never tuned silently.
struct Tolerances {
  double identity = 1e-8;          // exact-identity checks
  double kernel_identity = 1e-9;   // convolution identity checks
  double exact_bound_slack = 1e-9; // Plancherel-exact proof bounds
  double linf_ceiling = 2.5;       // ||E*K^||_inf vs Young bound
  double khat_ceiling = 2.0;       // ||K^||_inf / q
  double growth_ceiling = 1.5;     // max-C growth between first/last q
  double ratio_ceiling = 4.0;      // critical-vertex battery maximum
  double consec_lo = 0.5;          // consecutive-q ratio of battery maxima
  double consec_hi = 2.0;
  double slope_lo = 0.1;           // sharpness slope band
  double slope_hi = 0.3;
};

struct ExperimentConfig {
  std::vector<std::uint32_t> q_list = {3, 5};
  int d = 4;
  // empty means: each command falls back to the alternating hyperbolic pattern
  std::vector<std::int64_t> coeffs;
  std::vector<std::string> families = {"delta", "subspace", "sublevel:1",
                                       "random_set", "dyadic_random:4"};
  std::vector<std::uint64_t> seeds = {1};
  Tolerances tol;
  std::string output_dir = "out";
  std::uint64_t grid_budget = kDefaultGridBudget;
  int trials = 100;           // random grids per Fourier check
  int sets_per_regime = 200;  // random sets per regime in kernel sweeps
};

/// Parses the JSON config document on top of `base`; unknown keys are
/// rejected and every q is validated as an odd prime power within the grid
/// budget.
ExperimentConfig parse_config_json(const std::string& text,
                                   const ExperimentConfig& base = {});
ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  const ExperimentConfig& base = {});

/// Re-checks invariants after CLI flag overrides.
void validate_config(const ExperimentConfig& cfg);

}  // namespace qavg
