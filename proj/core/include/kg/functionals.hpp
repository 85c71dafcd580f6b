#pragma once

#include <optional>

#include "kg/groundstate.hpp"

namespace kg {

// Scalar nonlinearity f(u) with F = int f du and G = u f(u) - 2 F(u).
// ComplexSquare is the reduced first-order model forcing <D>^{-1}(U^2); it has
// no real energy density and the scalar maps are identically zero.
class Nonlinearity {
 public:
  enum class Kind { Quadratic, Phi4, Power, ComplexSquare, None };

  static Nonlinearity quadratic() { return Nonlinearity(Kind::Quadratic, 1); }
  static Nonlinearity phi4() { return Nonlinearity(Kind::Phi4, 1); }
  static Nonlinearity power(int p);
  static Nonlinearity complex_square() { return Nonlinearity(Kind::ComplexSquare, 1); }
  static Nonlinearity none() { return Nonlinearity(Kind::None, 1); }

  Kind kind() const { return kind_; }
  int p() const { return p_; }

  double f(double u) const;
  double F(double u) const;
  double G(double u) const;

 private:
  Nonlinearity(Kind k, int p) : kind_(k), p_(p) {}
  Kind kind_;
  int p_;
};

struct VariationalParams {
  double alpha = 1.0;
  double beta = 0.0;
};

// Conserved energy E(u, u_t) = int 1/2 u_t^2 + 1/2 |grad u|^2 + 1/2 u^2 - F(u).
double energy(const RadialField& u, const RadialField& ut, const Nonlinearity& nl);

// Stationary energy J(phi) = 1/2 ||phi||_{H^1}^2 - int F(phi).
double stationary_energy_J(const RadialField& phi, const Nonlinearity& nl);

// Sign functional K_{alpha,beta}(phi) = d/dlambda J(e^{alpha l} phi(e^{-beta l} x)) at l=0.
double sign_functional_K(const RadialField& phi, const VariationalParams& params,
                         const Nonlinearity& nl);

// Mass-critical virial functional ||grad g||_2^2 - d/(d+2) int |g|^{2(d+2)/d} (d = 4).
double virial_K(const RadialField& g);

enum class Region { KPlus, KMinus, Indeterminate };

struct Verdict {
  Region region = Region::Indeterminate;
  double energy = 0.0;
  double e_threshold = 0.0;  // E(Q, 0)
  double mass_ratio = 0.0;   // ||u0||_2 / ||Q||_2
  double k10 = 0.0;
  double k_virial = 0.0;
  bool boundary_flag = false;  // mass within tolerance band of ||Q||_2
};

// Payne-Sattinger style classification of initial data against the ground
// state threshold (d = 4 quadratic equation).
Verdict classify(const RadialField& u0, const RadialField& u1, const GroundState& q,
                 double mass_band = 1e-6);

const char* region_name(Region r);

}  // namespace kg
