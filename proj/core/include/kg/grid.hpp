#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>

namespace kg {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collocation grid for radial functions on R^d, d in {1,3,4}, truncated to a
// ball of radius r_max. Nodes sit at scaled zeros of the Bessel function of
// order nu = d/2 - 1, so the discrete Hankel transform between the nodes and
// the frequency nodes rho_m = j_m / r_max is well conditioned and the
// associated quadrature is spectrally accurate on smooth decaying fields.
//
// Conventions. The transform realizes the unitary radial Fourier transform
//   fhat(rho) = rho^{-nu} \int_0^inf f(r) J_nu(rho r) r^{nu+1} dr,
// under which exp(-r^2/2) is a fixed point. weights() integrate over R^d:
//   \int_{R^d} f dx ~= sum_i weights[i] f(r_i),
// and freq_weights() give Parseval on the coefficient side:
//   \int_{R^d} |fhat|^2 dxi ~= sum_m freq_weights[m] |F_m|^2.
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> make(int d, double r_max, int n);

  int dimension() const { return d_; }
  double r_max() const { return r_max_; }
  int size() const { return n_; }
  double bessel_order() const { return nu_; }
  double sphere_area() const { return c_d_; }

  const Eigen::VectorXd& nodes() const { return r_; }
  const Eigen::VectorXd& weights() const { return w_; }
  const Eigen::VectorXd& freq_nodes() const { return rho_; }
  const Eigen::VectorXd& freq_weights() const { return ws_; }

  // Dyadic shells resolvable on this grid; Besov sums truncate to this window.
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }

  // values at nodes -> Fourier coefficients at freq nodes, and back.
  Eigen::VectorXcd forward(const Eigen::VectorXcd& values) const;
  Eigen::VectorXcd inverse(const Eigen::VectorXcd& coeffs) const;
  Eigen::VectorXd forward(const Eigen::VectorXd& values) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& coeffs) const;

  // d/dr of the band-limited interpolant, sampled at the nodes.
  Eigen::VectorXcd radial_derivative(const Eigen::VectorXcd& coeffs) const;
  Eigen::VectorXd radial_derivative(const Eigen::VectorXd& coeffs) const;

  // \int_{R^d} dens dx by the node quadrature.
  double integrate(const Eigen::VectorXd& dens) const { return w_.dot(dens); }

  bool compatible_with(const RadialGrid& other) const {
    return d_ == other.d_ && n_ == other.n_ && r_max_ == other.r_max_;
  }

 private:
  RadialGrid() = default;

  int d_ = 0;
  int n_ = 0;
  double r_max_ = 0;
  double nu_ = 0;
  double c_d_ = 0;
  int k_min_ = 0;
  int k_max_ = 0;
  Eigen::VectorXd r_, w_, rho_, ws_;
  Eigen::MatrixXd synth_;   // coeffs -> values
  Eigen::MatrixXd analys_;  // values -> coeffs (inverse of synth_)
  Eigen::MatrixXd dsynth_;  // coeffs -> d/dr values
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int d, double r_max, int n);

}  // namespace kg
