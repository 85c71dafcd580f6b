#pragma once

#include <string>
#include <vector>

#include "kg/config.hpp"

namespace kg {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // residual, constant, or order, per check
  double tolerance = 0.0;  // pass bound (direction depends on the check)
  std::string detail;
};

// Named identity / property checks driven by the experiment config:
// parseval, roundtrip, lp_partition, halfwave, besov_equiv, energy_identity,
// pohozaev, gn_equality, modulation_bound, normalform_residual,
// morawetz_identity, convexity_identity.
// `only` filters by name; empty means all.
std::vector<CheckResult> run_verification(const ExperimentConfig& cfg,
                                          const std::vector<std::string>& only = {});

// Measured lower-bound constant of the modulation on the low-low support:
// min over samples of |Phi| <min(|xi-eta|, |eta|)>, over all four sign pairs.
struct ModulationScan {
  double min_product = 0.0;
  size_t samples = 0;
};

ModulationScan modulation_scan(const AnalysisParams& params, size_t n_random,
                               unsigned long long seed);

}  // namespace kg
