#include "kg/groundstate.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>

#include "kg/spectral.hpp"

namespace kg {
namespace {

struct OdeParams {
  int d;
  int p;
};

// Q'' + (d-1)/r Q' = Q - Q^{p+1}, as a first order system in (Q, Q').
int rhs(double r, const double y[], double dy[], void* params) {
  const auto* pp = static_cast<const OdeParams*>(params);
  dy[0] = y[1];
  dy[1] = y[0] - std::pow(y[0], pp->p + 1) - (pp->d - 1) / r * y[1];
  return GSL_SUCCESS;
}

// For the quadratic-type nonlinearity the two shooting branches are:
//   b too large -> Q crosses zero (and then runs off to -inf),
//   b too small -> Q turns around inside (0, b) and falls into the well at
//                  Q = 1, oscillating there forever.
// The separating b_star is the monotone ground-state trajectory.
enum class Branch { Crossing, Trapped, Undecided };

struct Shooter {
  int d;
  int p;
  double tol;
  double r_start;
  double r_cap;

  // the final profile is integrated tighter than the branch classification,
  // since e^{+r} error growth enters the sup-norm of the result
  double prof_tol() const { return std::min(tol, 1e-13); }

  // Taylor start: Q(r) ~ b + (b - b^{p+1}) r^2 / (2d) removes the r=0
  // singularity of the radial Laplacian.
  void initial_state(double b, double r0, double y[2]) const {
    const double a = (b - std::pow(b, p + 1)) / (2.0 * d);
    y[0] = b + a * r0 * r0;
    y[1] = 2.0 * a * r0;
  }

  Branch classify(double b) const {
    OdeParams params{d, p};
    gsl_odeiv2_system sys{rhs, nullptr, 2, &params};
    gsl_odeiv2_driver* drv =
        gsl_odeiv2_driver_alloc_y_new(&sys, gsl_odeiv2_step_rk8pd, 1e-4, tol, tol);
    double r = r_start;
    double y[2];
    initial_state(b, r, y);
    Branch out = Branch::Undecided;
    const int chunks = 4000;
    for (int i = 1; i <= chunks; ++i) {
      const double target = r_start + (r_cap - r_start) * i / chunks;
      const int status = gsl_odeiv2_driver_apply(drv, &r, target, y);
      if (status != GSL_SUCCESS || !std::isfinite(y[0]) || y[0] < 0.0) {
        out = Branch::Crossing;
        break;
      }
      if (y[1] > 0.0 && y[0] < b) {
        out = Branch::Trapped;
        break;
      }
      if (y[0] > 2.0 * b) {  // not reachable for this nonlinearity; safety net
        out = Branch::Trapped;
        break;
      }
    }
    gsl_odeiv2_driver_free(drv);
    // Reaching r_cap still monotone and positive means b is numerically
    // indistinguishable from b_star; keep the bracket shrinking.
    if (out == Branch::Undecided) out = Branch::Trapped;
    return out;
  }

  // Integrate at b and sample Q, Q' at the requested radii (must be
  // increasing). Integration stops once the trajectory leaves the clean
  // monotone-decay regime; remaining samples are marked invalid (nan).
  void sample(double b, const std::vector<double>& radii, std::vector<double>& q,
              std::vector<double>& dq) const {
    OdeParams params{d, p};
    gsl_odeiv2_system sys{rhs, nullptr, 2, &params};
    gsl_odeiv2_driver* drv =
        gsl_odeiv2_driver_alloc_y_new(&sys, gsl_odeiv2_step_rk8pd, 1e-4, prof_tol(), prof_tol());
    double r = r_start;
    double y[2];
    initial_state(b, r, y);
    q.assign(radii.size(), std::nan(""));
    dq.assign(radii.size(), std::nan(""));
    bool clean = true;
    for (size_t i = 0; i < radii.size(); ++i) {
      if (!clean) break;
      if (radii[i] <= r) {
        q[i] = y[0];
        dq[i] = y[1];
        continue;
      }
      const int status = gsl_odeiv2_driver_apply(drv, &r, radii[i], y);
      if (status != GSL_SUCCESS || !std::isfinite(y[0]) || y[0] <= 0.0 || y[1] >= 0.0 ||
          y[0] > 1.5 * b) {
        clean = false;
        break;
      }
      q[i] = y[0];
      dq[i] = y[1];
    }
    gsl_odeiv2_driver_free(drv);
  }
};

}  // namespace

GroundState solve_ground_state(const GridPtr& grid, int p, const GroundStateOptions& opts) {
  if (!grid) throw ParameterError("solve_ground_state: null grid");
  if (p < 1) throw ParameterError("solve_ground_state: power p must be >= 1");
  if (!(opts.tol > 0.0)) throw ParameterError("solve_ground_state: tol must be positive");

  const int d = grid->dimension();
  Shooter shooter{d, p, opts.tol, opts.r_start, grid->r_max()};

  // Bracket the separating amplitude: low end trapped, high end crossing.
  // The configured floor is respected; only the ceiling widens geometrically.
  double lo = opts.b_lo, hi = opts.b_hi;
  bool ok = false;
  if (shooter.classify(lo) == Branch::Trapped) {
    for (int widen = 0; widen <= opts.max_bracket_widen; ++widen) {
      if (shooter.classify(hi) == Branch::Crossing) {
        ok = true;
        break;
      }
      hi *= 2.0;
    }
  }
  if (!ok) throw ConvergenceError("ground state: no shooting bracket found in configured b-range");

  GroundState gs;
  gs.d = d;
  gs.p = p;
  const double width_target = std::max(1e-14, 1e-3 * opts.tol);
  while (hi - lo > width_target && static_cast<int>(gs.bracket_history.size()) < opts.max_bisect) {
    gs.bracket_history.push_back(hi - lo);
    const double mid = 0.5 * (lo + hi);
    if (shooter.classify(mid) == Branch::Crossing)
      hi = mid;
    else
      lo = mid;
  }
  gs.b_star = 0.5 * (lo + hi);

  // Sample the converged profile on the grid; beyond the last clean radius
  // match to the asymptotic tail c r^{-(d-1)/2} e^{-r}.
  std::vector<double> radii(grid->nodes().data(), grid->nodes().data() + grid->size());
  std::vector<double> q, dq;
  shooter.sample(gs.b_star, radii, q, dq);

  int last_clean = -1;
  for (size_t i = 0; i < q.size(); ++i) {
    if (std::isnan(q[i])) break;
    // hand over to the asymptotic tail before e^{+r} error growth matters
    if (q[i] < 1e-5 * gs.b_star) break;
    last_clean = static_cast<int>(i);
  }
  if (last_clean < 8) throw ResolutionError("ground state: profile not resolved on this grid");

  const double half = 0.5 * (d - 1);
  const double rm = radii[last_clean];
  gs.tail_match_r = rm;
  gs.tail_c = q[last_clean] * std::pow(rm, half) * std::exp(rm);
  Eigen::VectorXcd vals(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    if (i <= last_clean)
      vals[i] = q[i];
    else
      vals[i] = gs.tail_c * std::pow(radii[i], -half) * std::exp(-radii[i]);
  }
  gs.profile = RadialField(grid, std::move(vals));

  // Norms. Tail mass beyond r_max is exponentially negligible but accounted
  // for in closed form.
  Eigen::VectorXd qr = gs.profile.values.real();
  gs.mass_sq = grid->integrate(qr.cwiseAbs2());
  gs.pot_int = grid->integrate(qr.array().pow(p + 2).matrix());
  gs.grad_sq = grad_norm(gs.profile);
  gs.grad_sq *= gs.grad_sq;
  const double rmx = grid->r_max();
  const double tail_mass = grid->sphere_area() * gs.tail_c * gs.tail_c * 0.5 * std::exp(-2.0 * rmx);
  gs.mass_sq += tail_mass;
  gs.grad_sq += tail_mass;  // Q' ~ -Q to leading order in the tail

  gs.j_q = 0.5 * (gs.grad_sq + gs.mass_sq) - gs.pot_int / (p + 2);
  gs.e_q0 = gs.j_q;

  // Residual of the elliptic equation, evaluated spectrally.
  {
    SpectralField F = transform(gs.profile);
    SpectralField lhs = apply_multiplier(F, [](double rho) { return Complex(1.0 + rho * rho, 0.0); });
    RadialField lhs_r = inverse_transform(lhs);
    Eigen::VectorXd res = lhs_r.values.real() - qr.array().pow(p + 1).matrix();
    double num = 0.0, den = 0.0;
    // weight towards the interior where the profile is meaningful
    for (int i = 0; i <= last_clean; ++i) {
      num += grid->weights()[i] * res[i] * res[i];
      den += grid->weights()[i] * std::pow(qr[i], 2 * (p + 1));
    }
    gs.ode_residual = std::sqrt(num / std::max(den, 1e-300));
  }

  const IdentityReport rep = ground_state_report(gs);
  const double worst =
      std::max({rep.energy_identity, rep.pohozaev, rep.j_matches_energy});
  if (worst > 1e-3)
    throw ResolutionError("ground state: identity residuals too large at this resolution");
  return gs;
}

IdentityReport ground_state_report(const GroundState& q) {
  IdentityReport rep;
  const double h1 = q.grad_sq + q.mass_sq;
  rep.energy_identity = std::abs(h1 - q.pot_int) / std::abs(q.pot_int);
  const double lhs = 0.5 * (q.d - 2) * q.grad_sq + 0.5 * q.d * q.mass_sq;
  const double rhs = static_cast<double>(q.d) / (q.p + 2) * q.pot_int;
  rep.pohozaev = std::abs(lhs - rhs) / std::abs(rhs);
  rep.j_matches_energy = std::abs(q.j_q - q.e_q0) / std::max(std::abs(q.e_q0), 1e-300);
  if (q.p * q.d == 4) {
    // mass-critical: int Q^{2(d+2)/d} = (d+2)/d grad_sq at the extremal
    const double gn_lhs = q.pot_int;
    const double gn_rhs = (q.d + 2.0) / q.d * q.grad_sq;
    rep.gn_equality = std::abs(gn_lhs - gn_rhs) / std::abs(gn_rhs);
  }
  if (q.d == 4) rep.e_half_mass = std::abs(q.e_q0 - 0.5 * q.mass_sq) / (0.5 * q.mass_sq);
  return rep;
}

GnCheck verify_gn(const RadialField& g, const GroundState& q, double tol) {
  if (q.p * q.d != 4)
    throw ParameterError("verify_gn: sharp constant is the mass-critical one (p = 4/d)");
  GnCheck out;
  const double ex = 2.0 * (q.d + 2.0) / q.d;
  Eigen::VectorXd dens(g.values.size());
  for (int i = 0; i < g.values.size(); ++i) dens[i] = std::pow(std::abs(g.values[i]), ex);
  out.lhs = g.grid->integrate(dens);
  const double l2 = l2_norm(g);
  const double gr = grad_norm(g);
  out.rhs = (q.d + 2.0) / q.d * std::pow(l2 / std::sqrt(q.mass_sq), 4.0 / q.d) * gr * gr;
  out.holds = out.lhs <= out.rhs * (1.0 + tol);
  return out;
}

}  // namespace kg
