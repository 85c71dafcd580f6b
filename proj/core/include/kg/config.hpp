#pragma once

#include <map>
#include <string>
#include <vector>

#include "kg/evolution.hpp"

namespace kg {

// Experiment configuration, read from a flat-sectioned key = value file.
// Unknown keys are an error; every run embeds the resolved flat map.
struct ExperimentConfig {
  // [grid]
  int d = 4;
  double r_max = 72.0;
  int n = 512;

  // [analysis]
  AnalysisParams analysis;
  int angle_nodes = 64;

  // [nonlinearity] kind = quadratic | phi4 | power | usquare | none
  std::string nonlinearity = "quadratic";
  int power_p = 2;

  // [groundstate]
  int gs_p = 1;
  double gs_tol = 1e-10;
  double gs_b_lo = 1.0;
  double gs_b_hi = 10.0;

  // [initial] family = lambda_q | gaussian | file
  std::string family = "lambda_q";
  double lambda = 0.8;
  double amplitude = 0.1;
  double width = 1.0;
  std::string initial_file;

  // [evolution]
  double t_end = 50.0;
  double dt = 1e-3;
  int stride = 10;
  bool store_fields = false;
  bool track_besov = true;
  bool track_morawetz = true;
  bool track_scattering = true;

  // [sweep]
  std::vector<double> lambdas = {0.6, 0.8, 0.9, 1.1, 1.2, 1.5};

  // [thresholds]
  Thresholds thresholds;

  // [output]
  std::string out_dir = "out";
  bool emit_dat = false;

  unsigned long long seed = 12345;
  int threads = 1;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);

  void validate() const;  // throws ParameterError
  Nonlinearity make_nonlinearity() const;
  EvolveOptions evolve_options() const;
  GroundStateOptions groundstate_options() const;
  std::map<std::string, std::string> flat() const;
};

}  // namespace kg
