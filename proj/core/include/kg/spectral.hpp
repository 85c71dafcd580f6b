#pragma once

#include <limits>
#include <vector>

#include "kg/field.hpp"

namespace kg {

inline constexpr double kLinf = std::numeric_limits<double>::infinity();

SpectralField transform(const RadialField& f);
RadialField inverse_transform(const SpectralField& F);

// Pointwise Fourier multiplier m(rho) on the coefficients.
SpectralField apply_multiplier(const SpectralField& F, const std::function<Complex(double)>& m);
RadialField apply_multiplier(const RadialField& f, const std::function<Complex(double)>& m);

// <D>^s and D
double bracket(double rho);
SpectralField bessel_potential(const SpectralField& F, double s);
RadialField bessel_potential(const RadialField& f, double s);

// Half-wave propagator K(t) = exp(i t <D>).
SpectralField half_wave(const SpectralField& F, double t);
RadialField half_wave(const RadialField& f, double t);

// Littlewood-Paley pieces. P_k localizes to |xi| ~ 2^k; P_{<=k} is the low
// pass below 2^{k+1}.
SpectralField lp_project(const SpectralField& F, double k);
RadialField lp_project(const RadialField& f, int k);
SpectralField lp_project_below(const SpectralField& F, double k);
RadialField lp_project_below(const RadialField& f, double k);

// L^r norm over R^d by node quadrature; r = kLinf gives the sup over nodes.
double lr_norm(const RadialField& f, double r);
// Sobolev norms from coefficients: ( sum ws <rho>^{2s} |F|^2 )^{1/2}.
double sobolev_norm(const SpectralField& F, double s);
double sobolev_norm(const RadialField& f, double s);
double l2_norm(const RadialField& f);
// Homogeneous gradient norm ||\nabla f||_2.
double grad_norm(const SpectralField& F);
double grad_norm(const RadialField& f);

struct BesovSpec {
  double r = 2.0;  // spatial integrability
  double s0 = 0.0; // regularity on shells k <= 0
  double s1 = 0.0; // regularity on shells k >= 0
};

struct BesovResult {
  double value = 0.0;
  double low = 0.0;   // (sum_{k<=0} 4^{s0 k} ||P_k f||_r^2)^{1/2}
  double high = 0.0;  // (sum_{k>=0} 4^{s1 k} ||P_k f||_r^2)^{1/2}
  int k_min = 0;      // dyadic window actually summed
  int k_max = 0;
};

BesovResult besov_norm_detail(const RadialField& f, const BesovSpec& spec);
double besov_norm(const RadialField& f, const BesovSpec& spec);

// Space-time norm spec (1/q, 1/r, s0 | s1): L^q in time of the Besov value.
struct SpaceTimeNormSpec {
  double q_inv = 0.0;
  double r_inv = 0.5;
  double s0 = 0.0;
  double s1 = 0.0;

  void validate() const;
  double q() const { return q_inv == 0.0 ? kLinf : 1.0 / q_inv; }
  double r() const { return r_inv == 0.0 ? kLinf : 1.0 / r_inv; }
};

// Equally spaced time samples; trapezoidal L^q_t of the per-sample Besov
// values (max for q = inf).
double spacetime_norm(const std::vector<RadialField>& traj, double dt, const SpaceTimeNormSpec& spec);
double spacetime_norm_of_values(const std::vector<double>& besov_values, double dt, double q_inv);

}  // namespace kg
