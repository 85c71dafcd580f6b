#include "kg/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "kg/cutoff.hpp"

namespace kg {

RadialField::RadialField(GridPtr g, Eigen::VectorXcd v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw ParameterError("null grid");
  if (values.size() != grid->size()) throw ShapeError("value length does not match grid");
}

RadialField RadialField::zero(GridPtr g) {
  const int n = g ? g->size() : 0;
  return RadialField(std::move(g), Eigen::VectorXcd::Zero(n));
}

RadialField RadialField::from_function(GridPtr g, const std::function<Complex(double)>& f) {
  Eigen::VectorXcd v(g->size());
  for (int i = 0; i < g->size(); ++i) v[i] = f(g->nodes()[i]);
  return RadialField(std::move(g), std::move(v));
}

RadialField RadialField::from_real(GridPtr g, const std::function<double(double)>& f) {
  return from_function(std::move(g), [&](double r) { return Complex(f(r), 0.0); });
}

RadialField RadialField::real_part() const {
  Eigen::VectorXcd v = values.real().cast<Complex>();
  return RadialField(grid, std::move(v));
}

SpectralField::SpectralField(GridPtr g, Eigen::VectorXcd c) : grid(std::move(g)), coeffs(std::move(c)) {
  if (!grid) throw ParameterError("null grid");
  if (coeffs.size() != grid->size()) throw ShapeError("coefficient length does not match grid");
}

SpectralField SpectralField::zero(GridPtr g) {
  const int n = g ? g->size() : 0;
  return SpectralField(std::move(g), Eigen::VectorXcd::Zero(n));
}

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!a.grid || !b.grid || !a.grid->compatible_with(*b.grid)) throw ShapeError("grid mismatch");
}

RadialField operator+(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  return RadialField(a.grid, a.values + b.values);
}

RadialField operator-(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  return RadialField(a.grid, a.values - b.values);
}

RadialField operator*(Complex s, const RadialField& f) { return RadialField(f.grid, s * f.values); }
RadialField operator*(double s, const RadialField& f) { return RadialField(f.grid, s * f.values); }

RadialField pointwise_product(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  return RadialField(a.grid, a.values.cwiseProduct(b.values));
}

RadialField conj(const RadialField& f) { return RadialField(f.grid, f.values.conjugate()); }

SpectralField transform(const RadialField& f) { return SpectralField(f.grid, f.grid->forward(f.values)); }

RadialField inverse_transform(const SpectralField& F) {
  return RadialField(F.grid, F.grid->inverse(F.coeffs));
}

SpectralField apply_multiplier(const SpectralField& F, const std::function<Complex(double)>& m) {
  Eigen::VectorXcd c(F.coeffs.size());
  for (int i = 0; i < c.size(); ++i) {
    const Complex mi = m(F.grid->freq_nodes()[i]);
    if (!std::isfinite(mi.real()) || !std::isfinite(mi.imag()))
      throw NumericError("multiplier symbol not finite on frequency node");
    c[i] = mi * F.coeffs[i];
  }
  return SpectralField(F.grid, std::move(c));
}

RadialField apply_multiplier(const RadialField& f, const std::function<Complex(double)>& m) {
  return inverse_transform(apply_multiplier(transform(f), m));
}

double bracket(double rho) { return std::sqrt(1.0 + rho * rho); }

SpectralField bessel_potential(const SpectralField& F, double s) {
  return apply_multiplier(F, [s](double rho) { return Complex(std::pow(bracket(rho), s), 0.0); });
}

RadialField bessel_potential(const RadialField& f, double s) {
  return inverse_transform(bessel_potential(transform(f), s));
}

SpectralField half_wave(const SpectralField& F, double t) {
  return apply_multiplier(F, [t](double rho) { return std::exp(Complex(0.0, t * bracket(rho))); });
}

RadialField half_wave(const RadialField& f, double t) {
  return inverse_transform(half_wave(transform(f), t));
}

SpectralField lp_project(const SpectralField& F, double k) {
  return apply_multiplier(F, [k](double rho) { return Complex(lp_phi_k(k, rho), 0.0); });
}

RadialField lp_project(const RadialField& f, int k) {
  return inverse_transform(lp_project(transform(f), static_cast<double>(k)));
}

SpectralField lp_project_below(const SpectralField& F, double k) {
  return apply_multiplier(F, [k](double rho) { return Complex(cutoff_chi_k(k, rho), 0.0); });
}

RadialField lp_project_below(const RadialField& f, double k) {
  return inverse_transform(lp_project_below(transform(f), k));
}

double lr_norm(const RadialField& f, double r) {
  if (r < 1.0) throw ParameterError("L^r norm needs r >= 1");
  if (r == kLinf) {
    double m = 0.0;
    for (int i = 0; i < f.values.size(); ++i) m = std::max(m, std::abs(f.values[i]));
    return m;
  }
  double acc = 0.0;
  for (int i = 0; i < f.values.size(); ++i)
    acc += f.grid->weights()[i] * std::pow(std::abs(f.values[i]), r);
  return std::pow(acc, 1.0 / r);
}

double sobolev_norm(const SpectralField& F, double s) {
  double acc = 0.0;
  for (int i = 0; i < F.coeffs.size(); ++i) {
    const double b = bracket(F.grid->freq_nodes()[i]);
    acc += F.grid->freq_weights()[i] * std::pow(b, 2.0 * s) * std::norm(F.coeffs[i]);
  }
  return std::sqrt(acc);
}

double sobolev_norm(const RadialField& f, double s) { return sobolev_norm(transform(f), s); }

double l2_norm(const RadialField& f) {
  double acc = 0.0;
  for (int i = 0; i < f.values.size(); ++i) acc += f.grid->weights()[i] * std::norm(f.values[i]);
  return std::sqrt(acc);
}

double grad_norm(const SpectralField& F) {
  double acc = 0.0;
  for (int i = 0; i < F.coeffs.size(); ++i) {
    const double rho = F.grid->freq_nodes()[i];
    acc += F.grid->freq_weights()[i] * rho * rho * std::norm(F.coeffs[i]);
  }
  return std::sqrt(acc);
}

double grad_norm(const RadialField& f) { return grad_norm(transform(f)); }

namespace {

double shell_lr_norm(const SpectralField& F, double k, double r) {
  SpectralField shell = lp_project(F, k);
  if (r == 2.0) {
    double acc = 0.0;
    for (int i = 0; i < shell.coeffs.size(); ++i)
      acc += F.grid->freq_weights()[i] * std::norm(shell.coeffs[i]);
    return std::sqrt(acc);
  }
  return lr_norm(inverse_transform(shell), r);
}

}  // namespace

BesovResult besov_norm_detail(const RadialField& f, const BesovSpec& spec) {
  if (spec.r < 1.0) throw ParameterError("Besov norm needs r >= 1");
  if (!f.finite()) throw NumericError("Besov norm of non-finite field");
  BesovResult out;
  out.k_min = f.grid->k_min();
  out.k_max = f.grid->k_max();
  const SpectralField F = transform(f);
  double low = 0.0, high = 0.0;
  for (int k = out.k_min; k <= out.k_max; ++k) {
    const double nk = shell_lr_norm(F, k, spec.r);
    if (k <= 0) low += std::exp2(2.0 * spec.s0 * k) * nk * nk;
    if (k >= 0) high += std::exp2(2.0 * spec.s1 * k) * nk * nk;
  }
  out.low = std::sqrt(low);
  out.high = std::sqrt(high);
  out.value = out.low + out.high;
  return out;
}

double besov_norm(const RadialField& f, const BesovSpec& spec) {
  return besov_norm_detail(f, spec).value;
}

void SpaceTimeNormSpec::validate() const {
  if (q_inv < 0.0 || q_inv > 1.0 || r_inv < 0.0 || r_inv > 1.0)
    throw ParameterError("space-time norm needs 1/q and 1/r in [0,1]");
}

double spacetime_norm_of_values(const std::vector<double>& vals, double dt, double q_inv) {
  if (vals.empty()) throw ParameterError("space-time norm of empty trajectory");
  if (q_inv == 0.0) return *std::max_element(vals.begin(), vals.end());
  const double q = 1.0 / q_inv;
  double acc = 0.0;
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    acc += 0.5 * dt * (std::pow(vals[i], q) + std::pow(vals[i + 1], q));
  if (vals.size() == 1) acc = 0.0;
  return std::pow(acc, q_inv);
}

double spacetime_norm(const std::vector<RadialField>& traj, double dt, const SpaceTimeNormSpec& spec) {
  spec.validate();
  if (traj.empty()) throw ParameterError("space-time norm of empty trajectory");
  std::vector<double> vals;
  vals.reserve(traj.size());
  const BesovSpec bs{spec.r(), spec.s0, spec.s1};
  for (const auto& f : traj) vals.push_back(besov_norm(f, bs));
  return spacetime_norm_of_values(vals, dt, spec.q_inv);
}

}  // namespace kg
