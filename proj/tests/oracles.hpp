// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "kg/cutoff.hpp"
#include "kg/field.hpp"

namespace kg::oracles {

// ---------------------------------------------------------------------------
// Independent shooting oracle for -Q'' - (d-1)/r Q' + Q = Q^{p+1}: fixed-step
// classical RK4 (no adaptive driver, no GSL), bisection on Q(0).
// ---------------------------------------------------------------------------

inline int shoot_classify(double b, int d, int p, double h, double r_cap) {
  // returns +1 crossing (b too large), -1 trapped (b too small)
  double r = 1e-8;
  const double a = (b - std::pow(b, p + 1)) / (2.0 * d);
  double q = b + a * r * r, dq = 2.0 * a * r;
  auto f = [&](double rr, double qq, double pp) {
    return std::pair<double, double>(pp, qq - std::pow(qq, p + 1) - (d - 1) / rr * pp);
  };
  while (r < r_cap) {
    auto k1 = f(r, q, dq);
    auto k2 = f(r + h / 2, q + h / 2 * k1.first, dq + h / 2 * k1.second);
    auto k3 = f(r + h / 2, q + h / 2 * k2.first, dq + h / 2 * k2.second);
    auto k4 = f(r + h, q + h * k3.first, dq + h * k3.second);
    q += h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
    dq += h / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
    r += h;
    if (q < 0.0) return +1;
    if (dq > 0.0 && q < b) return -1;
  }
  return -1;
}

inline double shoot_bstar(int d, int p, double h, double lo = 1.0, double hi = 14.0) {
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (shoot_classify(mid, d, p, h, 60.0) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Dense brute-force quadrature oracle for the radial bilinear application,
// at double resolution in both |eta| (Gauss-Legendre over the band, instead
// of the implementation's frequency nodes) and the angle. The spectra fhat,
// ghat are supplied analytically by the test, so no interpolation from the
// implementation enters.
// ---------------------------------------------------------------------------

struct DenseBilinearOracle {
  int d;
  std::function<Complex(double, double, double)> symbol;  // (w, eta, xi)
  std::function<double(double)> fhat;
  std::function<double(double)> ghat;
  double rho_max;
  int n_radial;
  int n_angle;

  Complex eval(double xi) const {
    constexpr double pi = std::numbers::pi;
    gsl_integration_glfixed_table* tr = gsl_integration_glfixed_table_alloc(n_radial);
    gsl_integration_glfixed_table* ta = gsl_integration_glfixed_table_alloc(n_angle);
    Complex acc(0.0, 0.0);
    for (int m = 0; m < n_radial; ++m) {
      double eta, weta;
      gsl_integration_glfixed_point(0.0, rho_max, m, &eta, &weta, tr);
      const double gv = ghat(eta);
      if (gv == 0.0) continue;
      Complex ang(0.0, 0.0);
      if (d == 1) {
        ang = symbol(std::abs(xi - eta), eta, xi) * fhat(std::abs(xi - eta)) +
              symbol(xi + eta, eta, xi) * fhat(xi + eta);
      } else {
        for (int a = 0; a < n_angle; ++a) {
          double th, wth;
          gsl_integration_glfixed_point(0.0, pi, a, &th, &wth, ta);
          const double w =
              std::sqrt(std::max(xi * xi + eta * eta - 2.0 * xi * eta * std::cos(th), 0.0));
          ang += wth * std::pow(std::sin(th), d - 2) * symbol(w, eta, xi) * fhat(w);
        }
      }
      acc += weta * std::pow(eta, d - 1) * gv * ang;
    }
    gsl_integration_glfixed_table_free(tr);
    gsl_integration_glfixed_table_free(ta);
    const double sphere_dm2 = d == 1 ? 1.0 : (d == 3 ? 2.0 * pi : 4.0 * pi);
    return std::pow(2.0 * pi, -0.5 * d) * sphere_dm2 * acc;
  }
};

}  // namespace kg::oracles
