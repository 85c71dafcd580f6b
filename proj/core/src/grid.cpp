#include "kg/grid.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <numbers>

namespace kg {
namespace {

constexpr double kPi = std::numbers::pi;

// J_nu for the orders this grid family needs. Half-integer orders have closed
// forms; integer orders come from GSL.
double bessel_j(double nu, double x) {
  if (nu == -0.5) return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
  if (nu == 0.5) return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
  if (nu == 1.5) return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
  if (nu == 1.0) return gsl_sf_bessel_J1(x);
  if (nu == 2.0) return gsl_sf_bessel_Jn(2, x);
  throw ParameterError("unsupported Bessel order");
}

double bessel_zero(double nu, int m) {
  if (nu == -0.5) return (m - 0.5) * kPi;
  if (nu == 0.5) return m * kPi;
  if (nu == 1.0) return gsl_sf_bessel_zero_J1(m);
  throw ParameterError("unsupported Bessel order");
}

}  // namespace

std::shared_ptr<const RadialGrid> RadialGrid::make(int d, double r_max, int n) {
  if (d != 1 && d != 3 && d != 4) throw ParameterError("grid dimension must be 1, 3, or 4");
  if (!(r_max > 0.0)) throw ParameterError("grid r_max must be positive");
  if (n < 16) throw ParameterError("grid needs at least 16 nodes");

  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
  grid->d_ = d;
  grid->n_ = n;
  grid->r_max_ = r_max;
  const double nu = 0.5 * d - 1.0;
  grid->nu_ = nu;
  grid->c_d_ = d == 1 ? 2.0 : (d == 3 ? 4.0 * kPi : 2.0 * kPi * kPi);

  Eigen::VectorXd zeros(n + 1);
  for (int m = 1; m <= n + 1; ++m) zeros[m - 1] = bessel_zero(nu, m);
  const double big_s = zeros[n];

  grid->r_.resize(n);
  grid->w_.resize(n);
  grid->rho_.resize(n);
  grid->ws_.resize(n);
  Eigen::VectorXd jnu1_sq(n);
  for (int i = 0; i < n; ++i) {
    const double j = zeros[i];
    const double r = j * r_max / big_s;
    const double rho = j / r_max;
    const double jn1 = bessel_j(nu + 1.0, j);
    jnu1_sq[i] = jn1 * jn1;
    grid->r_[i] = r;
    grid->rho_[i] = rho;
    grid->w_[i] = grid->c_d_ * std::pow(r, d - 2) * 2.0 * r_max * r_max / (big_s * big_s * jnu1_sq[i]);
    grid->ws_[i] = grid->c_d_ * std::pow(rho, d - 2) * 2.0 / (r_max * r_max * jnu1_sq[i]);
  }
  if (d == 1) {
    // The d=1 nodes are uniform midpoints; plain midpoint weights lose the
    // half-line boundary terms for fields with f'(0) != 0 (even extension
    // kink). Fold the Euler-Maclaurin endpoint corrections
    //   int = h*sum + h^2/24 [f']_0^R - 7h^4/5760 [f''']_0^R + ...
    // into the first and last few weights, with one-sided stencils for the
    // derivatives.
    const double h = r_max / (n + 0.5);
    constexpr int kStencil = 10;
    Eigen::MatrixXd v(kStencil, kStencil);
    for (int p = 0; p < kStencil; ++p)
      for (int i = 0; i < kStencil; ++i) v(p, i) = std::pow(i + 0.5, p);
    Eigen::VectorXd rhs1 = Eigen::VectorXd::Zero(kStencil);
    Eigen::VectorXd rhs3 = Eigen::VectorXd::Zero(kStencil);
    rhs1[1] = 1.0 / h;
    rhs3[3] = 6.0 / (h * h * h);
    const Eigen::VectorXd c1 = v.fullPivLu().solve(rhs1);  // f'(0) stencil
    const Eigen::VectorXd c3 = v.fullPivLu().solve(rhs3);  // f'''(0) stencil
    const double a2 = h * h / 24.0;
    const double a4 = 7.0 * std::pow(h, 4) / 5760.0;
    // Fields vanish near r_max by the truncation policy, so only the r=0
    // boundary terms are folded in.
    for (int i = 0; i < kStencil; ++i)
      grid->w_[i] += grid->c_d_ * (-a2 * c1[i] + a4 * c3[i]);
  }

  grid->k_min_ = static_cast<int>(std::floor(std::log2(grid->rho_[0])));
  grid->k_max_ = static_cast<int>(std::ceil(std::log2(grid->rho_[n - 1])));

  // Synthesis matrix: f(r_i) = sum_m B_im F_m with F_m the unitary-transform
  // samples at rho_m. Analysis is its inverse; the derivative synthesis uses
  // d/dr [ J_nu(a r) r^{-nu} ] = -a J_{nu+1}(a r) r^{-nu}.
  grid->synth_.resize(n, n);
  grid->dsynth_.resize(n, n);
  for (int m = 0; m < n; ++m) {
    const double rho = grid->rho_[m];
    const double scale = 2.0 * std::pow(rho, nu) / (r_max * r_max * jnu1_sq[m]);
    for (int i = 0; i < n; ++i) {
      const double arg = zeros[m] * grid->r_[i] / r_max;
      const double rpow = std::pow(grid->r_[i], nu);
      grid->synth_(i, m) = scale * bessel_j(nu, arg) / rpow;
      grid->dsynth_(i, m) = -rho * scale * bessel_j(nu + 1.0, arg) / rpow;
    }
  }
  grid->analys_ = grid->synth_.partialPivLu().inverse();
  return grid;
}

namespace {

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

}  // namespace

Eigen::VectorXcd RadialGrid::forward(const Eigen::VectorXcd& values) const {
  if (values.size() != n_) throw ShapeError("field length does not match grid");
  return apply_real(analys_, values);
}

Eigen::VectorXcd RadialGrid::inverse(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != n_) throw ShapeError("coefficient length does not match grid");
  return apply_real(synth_, coeffs);
}

Eigen::VectorXd RadialGrid::forward(const Eigen::VectorXd& values) const {
  if (values.size() != n_) throw ShapeError("field length does not match grid");
  return analys_ * values;
}

Eigen::VectorXd RadialGrid::inverse(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != n_) throw ShapeError("coefficient length does not match grid");
  return synth_ * coeffs;
}

Eigen::VectorXcd RadialGrid::radial_derivative(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != n_) throw ShapeError("coefficient length does not match grid");
  return apply_real(dsynth_, coeffs);
}

Eigen::VectorXd RadialGrid::radial_derivative(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != n_) throw ShapeError("coefficient length does not match grid");
  return dsynth_ * coeffs;
}

GridPtr make_grid(int d, double r_max, int n) { return RadialGrid::make(d, r_max, n); }

}  // namespace kg
