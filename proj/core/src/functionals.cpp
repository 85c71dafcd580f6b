#include "kg/functionals.hpp"

#include <cmath>

#include "kg/spectral.hpp"

namespace kg {

Nonlinearity Nonlinearity::power(int p) {
  if (p < 1) throw ParameterError("power nonlinearity needs p >= 1");
  return Nonlinearity(Kind::Power, p);
}

double Nonlinearity::f(double u) const {
  switch (kind_) {
    case Kind::Quadratic: return u * u;
    case Kind::Phi4: return -3.0 * u * u - u * u * u;
    case Kind::Power: return std::pow(u, p_ + 1);
    case Kind::ComplexSquare: return 0.0;
    case Kind::None: return 0.0;
  }
  return 0.0;
}

double Nonlinearity::F(double u) const {
  switch (kind_) {
    case Kind::Quadratic: return u * u * u / 3.0;
    case Kind::Phi4: return -u * u * u - 0.25 * u * u * u * u;
    case Kind::Power: return std::pow(u, p_ + 2) / (p_ + 2);
    case Kind::ComplexSquare: return 0.0;
    case Kind::None: return 0.0;
  }
  return 0.0;
}

double Nonlinearity::G(double u) const { return u * f(u) - 2.0 * F(u); }

namespace {

double integral_of(const RadialField& phi, const std::function<double(double)>& dens) {
  Eigen::VectorXd v(phi.values.size());
  for (int i = 0; i < v.size(); ++i) v[i] = dens(phi.values[i].real());
  return phi.grid->integrate(v);
}

}  // namespace

double energy(const RadialField& u, const RadialField& ut, const Nonlinearity& nl) {
  require_same_grid(u, ut);
  const double gsq = grad_norm(u);
  const double msq = l2_norm(u);
  const double tsq = l2_norm(ut);
  const double pot = integral_of(u, [&](double x) { return nl.F(x); });
  return 0.5 * (tsq * tsq + gsq * gsq + msq * msq) - pot;
}

double stationary_energy_J(const RadialField& phi, const Nonlinearity& nl) {
  const double gsq = grad_norm(phi);
  const double msq = l2_norm(phi);
  const double pot = integral_of(phi, [&](double x) { return nl.F(x); });
  return 0.5 * (gsq * gsq + msq * msq) - pot;
}

double sign_functional_K(const RadialField& phi, const VariationalParams& params,
                         const Nonlinearity& nl) {
  const int d = phi.grid->dimension();
  const double a = params.alpha, b = params.beta;
  const double gsq = grad_norm(phi);
  const double msq = l2_norm(phi);
  const double int_F = integral_of(phi, [&](double x) { return nl.F(x); });
  const double int_uf = integral_of(phi, [&](double x) { return x * nl.f(x); });
  return 0.5 * (2.0 * a + (d - 2) * b) * gsq * gsq + 0.5 * (2.0 * a + d * b) * msq * msq -
         d * b * int_F - a * int_uf;
}

double virial_K(const RadialField& g) {
  const int d = g.grid->dimension();
  if (d != 4) throw ParameterError("virial_K: mass-critical instance requires d = 4");
  const double gsq = grad_norm(g);
  Eigen::VectorXd dens(g.values.size());
  for (int i = 0; i < dens.size(); ++i) dens[i] = std::pow(std::abs(g.values[i]), 3.0);
  return gsq * gsq - (2.0 / 3.0) * g.grid->integrate(dens);
}

Verdict classify(const RadialField& u0, const RadialField& u1, const GroundState& q,
                 double mass_band) {
  require_same_grid(u0, u1);
  if (u0.grid->dimension() != 4) throw ParameterError("classify: dichotomy classifier requires d = 4");
  if (q.d != 4 || q.p != 1) throw ParameterError("classify: ground state must be the d=4 quadratic one");

  const Nonlinearity nl = Nonlinearity::quadratic();
  Verdict v;
  v.energy = energy(u0, u1, nl);
  v.e_threshold = q.e_q0;
  v.mass_ratio = l2_norm(u0) / std::sqrt(q.mass_sq);
  v.k10 = sign_functional_K(u0, VariationalParams{1.0, 0.0}, nl);
  v.k_virial = virial_K(u0);

  if (std::abs(v.mass_ratio - 1.0) <= mass_band) {
    v.boundary_flag = true;
    return v;  // Indeterminate
  }
  if (v.energy >= v.e_threshold) return v;  // Indeterminate
  v.region = v.mass_ratio < 1.0 ? Region::KPlus : Region::KMinus;
  return v;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::KPlus: return "KPlus";
    case Region::KMinus: return "KMinus";
    case Region::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

}  // namespace kg
