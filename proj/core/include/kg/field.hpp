#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "kg/grid.hpp"

namespace kg {

using Complex = std::complex<double>;

// Samples of a radial function at the grid nodes.
struct RadialField {
  GridPtr grid;
  Eigen::VectorXcd values;

  RadialField() = default;
  RadialField(GridPtr g, Eigen::VectorXcd v);
  static RadialField zero(GridPtr g);
  static RadialField from_function(GridPtr g, const std::function<Complex(double)>& f);
  static RadialField from_real(GridPtr g, const std::function<double(double)>& f);

  RadialField real_part() const;
  bool finite() const { return values.allFinite(); }
};

// Hankel coefficients at the frequency nodes of the companion grid.
struct SpectralField {
  GridPtr grid;
  Eigen::VectorXcd coeffs;

  SpectralField() = default;
  SpectralField(GridPtr g, Eigen::VectorXcd c);
  static SpectralField zero(GridPtr g);
  bool finite() const { return coeffs.allFinite(); }
};

void require_same_grid(const RadialField& a, const RadialField& b);

RadialField operator+(const RadialField& a, const RadialField& b);
RadialField operator-(const RadialField& a, const RadialField& b);
RadialField operator*(Complex s, const RadialField& f);
RadialField operator*(double s, const RadialField& f);
RadialField pointwise_product(const RadialField& a, const RadialField& b);
RadialField conj(const RadialField& f);

}  // namespace kg
