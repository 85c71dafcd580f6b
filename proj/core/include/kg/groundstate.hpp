#pragma once

#include <optional>
#include <vector>

#include "kg/field.hpp"

namespace kg {

// Converged ground-state profile of -\Delta Q + Q = Q^{p+1} together with its
// norms and the identity residuals used throughout the variational analysis.
struct GroundState {
  RadialField profile;  // Q >= 0 sampled at the grid nodes
  int d = 0;
  int p = 1;
  double b_star = 0.0;  // Q(0)
  double mass_sq = 0.0;  // ||Q||_2^2
  double grad_sq = 0.0;  // ||grad Q||_2^2
  double pot_int = 0.0;  // int Q^{p+2}
  double j_q = 0.0;      // J(Q)
  double e_q0 = 0.0;     // E(Q, 0) (= J(Q))
  double ode_residual = 0.0;   // relative H to the elliptic equation
  double tail_match_r = 0.0;   // radius beyond which the exponential tail is used
  double tail_c = 0.0;         // Q ~ tail_c r^{-(d-1)/2} e^{-r}
  std::vector<double> bracket_history;  // bisection bracket widths
};

struct GroundStateOptions {
  double tol = 1e-10;       // ODE integrator tolerance and target identity scale
  double b_lo = 1.0;        // initial shooting bracket
  double b_hi = 10.0;
  int max_bracket_widen = 8;
  int max_bisect = 200;
  double r_start = 1e-6;    // Taylor start radius
};

GroundState solve_ground_state(const GridPtr& grid, int p, const GroundStateOptions& opts = {});

// Residuals of the exact identities satisfied by Q. All are relative.
struct IdentityReport {
  double energy_identity = 0.0;   // ||Q||_{H^1}^2 = ||Q||_{p+2}^{p+2}
  double pohozaev = 0.0;          // (d-2)/2 grad + d/2 mass = d/(p+2) pot
  double j_matches_energy = 0.0;  // J(Q) = E(Q,0)
  std::optional<double> gn_equality;    // p = 4/d only
  std::optional<double> e_half_mass;    // d = 4: E(Q,0) = mass/2
};

IdentityReport ground_state_report(const GroundState& q);

// Sharp Gagliardo-Nirenberg check at the mass-critical exponent:
// int |g|^{2(d+2)/d} <= (d+2)/d (||g||_2/||Q||_2)^{4/d} ||grad g||_2^2.
struct GnCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

GnCheck verify_gn(const RadialField& g, const GroundState& q, double tol = 1e-3);

}  // namespace kg
