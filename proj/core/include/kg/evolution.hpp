#pragma once

#include <array>
#include <optional>

#include "kg/functionals.hpp"
#include "kg/normalform.hpp"
#include "kg/record.hpp"
#include "kg/spectral.hpp"
#include "kg/trajectory.hpp"

namespace kg {

// First-order state U = u - i <D>^{-1} u_t, held spectrally; (u, u_t) are
// exact diagonal reconstructions.
struct SimState {
  SpectralField uhat;
  double t = 0.0;

  RadialField U() const { return inverse_transform(uhat); }
  RadialField u() const;
  RadialField ut() const;
};

SimState make_state(const RadialField& u0, const RadialField& u1, double t = 0.0);

// One interaction-picture (Lawson) RK4 step with exact half-wave transport of
// the linear part. Overflow is not an error here; detect_blowup consumes it.
SimState step(const SimState& state, double dt, const Nonlinearity& nl);

struct Thresholds {
  double blowup_factor = 1e3;   // H^1 growth factor declaring blow-up
  double scatter_cauchy = 1e-3; // H^1 Cauchy threshold for the scattering verdict
  double eps1 = 0.1;            // L^3 window level
  double tau1 = 5.0;            // L^3 window length
  double morawetz_r = 10.0;     // localization radius R
  double boundary_frac = 1e-6;  // boundary contamination fraction
  double mass_band = 1e-6;      // classifier tolerance band
};

struct EvolveOptions {
  double t_end = 50.0;
  double dt = 1e-3;
  int stride = 10;
  bool store_fields = false;
  bool track_morawetz = true;
  bool track_besov = true;
  bool track_scattering = true;
  Thresholds thresholds;
  AnalysisParams analysis;
  BilinearOptions bilinear;
};

struct EvolveResult {
  RunRecord record;
  Trajectory trajectory;  // sampled snapshots; always holds the scattering samples
  Eigen::VectorXcd u_plus;  // spectral scattering profile, when extracted
};

EvolveResult evolve(const RadialField& u0, const RadialField& u1, const Nonlinearity& nl,
                    const EvolveOptions& opts);

// Post-hoc convexity analysis of y(t) = ||u||_2^2 on a recorded run:
// d^2y/dt^2 = 5 ||u_t||_2^2 - 6 E + ||u||_{H^1}^2 while the run is resolved.
struct BlowupReport {
  bool blew_up = false;
  double t_detect = -1.0;
  double max_identity_residual = 0.0;  // relative to the RHS scale
  std::vector<double> times;
  std::vector<double> identity_residual;
};

BlowupReport detect_blowup(const RunRecord& record);

// Morawetz weights built from the shared cutoff profile.
struct MorawetzWeights {
  double R = 0.0;
  Eigen::VectorXd chi_sq;        // chi_R^2 at nodes
  Eigen::VectorXd varphi;        // phi(r) = int_0^r chi_R^2
  Eigen::VectorXd div_psi;       // (d-1) phi/r + phi'
  Eigen::VectorXd lap_div_psi;   // phi''' + 2(d-1)/r phi'' - (d-1)(d-3)/r^2 (phi/r - phi')
  Eigen::VectorXd phi_over_r_minus_dphi;
};

MorawetzWeights make_morawetz_weights(const GridPtr& grid, double R);

// M(t) = -int u_t (Psi . grad u + 1/2 div Psi u) dx.
double morawetz_m(const SimState& state, const MorawetzWeights& mw);

struct MorawetzReport {
  std::vector<double> times;
  std::vector<double> m_series;
  std::vector<double> identity_residual;  // |dM/dt - identity RHS| / scale
  double max_abs_m_over_r = 0.0;
  double max_identity_residual = 0.0;
  std::vector<std::array<double, 4>> windows;  // {T, 2T, int int |u|^3, R + T R^{-3/2}}
};

MorawetzReport morawetz_track(const Trajectory& traj, double R, const Nonlinearity& nl);

struct L3Report {
  std::vector<double> times;
  std::vector<double> u3_series;  // ||U(t)||_3
  double best_window_start = 0.0;
  double best_window_sup = 0.0;
};

L3Report l3_track(const std::vector<double>& times, const std::vector<double>& l3_series,
                  double tau1);

struct ScatteringReport {
  std::vector<double> times;
  std::vector<std::vector<double>> cauchy;  // ||v_n - v_m||_{H^1}
  std::vector<double> consecutive;          // ||v_{i+1} - v_i||_{H^1}
  std::vector<double> omega_h1;             // ||Omega(U,U)(t_n)||_{H^1}
  bool scattered = false;
  Eigen::VectorXcd u_plus;  // spectral profile of the last K(-t) U(t)
};

ScatteringReport scattering_extract(const Trajectory& traj, const std::vector<double>& times,
                                    double cauchy_threshold, const AnalysisParams& params,
                                    const BilinearOptions& opts = {});

}  // namespace kg
