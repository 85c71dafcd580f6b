#pragma once

#include <string>
#include <vector>

#include "kg/field.hpp"

namespace kg {

enum class TrajModel { Free, Real, ComplexSquare };

// Uniformly sampled spectral snapshots of the first-order variable U.
struct Trajectory {
  GridPtr grid;
  TrajModel model = TrajModel::Real;
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;  // transform coefficients of U

  bool empty() const { return times.empty(); }
  size_t size() const { return times.size(); }
  double dt() const;
  RadialField field_at(size_t i) const;
};

const char* traj_model_name(TrajModel m);

}  // namespace kg
