#include "kg/normalform.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_interp.h>
#include <gsl/gsl_spline.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "kg/cutoff.hpp"
#include "kg/spectral.hpp"

namespace kg {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double Trajectory::dt() const {
  if (times.size() < 2) throw ParameterError("trajectory too short");
  return times[1] - times[0];
}

RadialField Trajectory::field_at(size_t i) const {
  return RadialField(grid, grid->inverse(states.at(i)));
}

const char* traj_model_name(TrajModel m) {
  switch (m) {
    case TrajModel::Free: return "free";
    case TrajModel::Real: return "real";
    case TrajModel::ComplexSquare: return "usquare";
  }
  return "real";
}

std::vector<std::string> AnalysisParams::validate() const {
  std::vector<std::string> warnings;
  if (beta < 3.0) warnings.push_back("analysis: beta < 3 is outside the validated range");
  if (!(kappa > 0.0) || kappa > epsilon / 10.0)
    warnings.push_back("analysis: expected 0 < kappa <= epsilon/10");
  if (epsilon > 0.05) warnings.push_back("analysis: expected epsilon <= 0.05");
  if (!(delta > 0.0)) warnings.push_back("analysis: expected delta > 0");
  return warnings;
}

std::vector<RegionTag> region_of(int j, int k, const AnalysisParams& params) {
  const double b = params.beta;
  std::vector<RegionTag> tags;
  if (j >= -b - 10 && k >= -b - 10) tags.push_back(RegionTag::HH);
  if (j >= k + 5 && j >= -b - 10 && k <= -b + 10) tags.push_back(RegionTag::HL);
  if (k >= j + 5 && k >= -b - 10 && j <= -b + 10) tags.push_back(RegionTag::LH);
  if (j <= -b + 10 && k <= -b + 10) tags.push_back(RegionTag::LL);
  return tags;
}

const char* region_name(RegionTag t) {
  switch (t) {
    case RegionTag::HH: return "HH";
    case RegionTag::HL: return "HL";
    case RegionTag::LH: return "LH";
    case RegionTag::LL: return "LL";
  }
  return "?";
}

double modulation_phi_from_lengths(double xi_abs, double w, double eta_abs,
                                   const ModulationSpec& spec) {
  return -bracket(xi_abs) + spec.iota1 * bracket(w) + spec.iota2 * bracket(eta_abs);
}

double modulation_phi(double xi_abs, double eta_abs, double cosang, const ModulationSpec& spec) {
  if (std::abs(cosang) > 1.0 + 1e-12) throw ParameterError("modulation: |cos| must be <= 1");
  const double c = std::clamp(cosang, -1.0, 1.0);
  const double w2 = xi_abs * xi_abs + eta_abs * eta_abs - 2.0 * xi_abs * eta_abs * c;
  return modulation_phi_from_lengths(xi_abs, std::sqrt(std::max(w2, 0.0)), eta_abs, spec);
}

double m_ll(double w, double eta_abs, const AnalysisParams& params) {
  const double kcut = -params.beta + 10.0;
  return cutoff_chi_k(kcut, w) * cutoff_chi_k(kcut, eta_abs);
}

namespace {

// Natural cubic spline of a spectral profile over knots {-rho_1, 0, rho_1,
// ..., rho_N}; radial spectra are even, so mirroring one knot fixes the slope
// at the origin. Evaluates to 0 beyond the band edge.
class SpectralInterp {
 public:
  SpectralInterp(const SpectralField& F) {
    const auto& rho = F.grid->freq_nodes();
    const int n = F.grid->size();
    x_.resize(n + 2);
    yr_.resize(n + 2);
    yi_.resize(n + 2);
    // fhat(0) from the plain integral of f.
    const RadialField f = inverse_transform(F);
    Complex f0(0.0, 0.0);
    for (int i = 0; i < n; ++i) f0 += F.grid->weights()[i] * f.values[i];
    f0 *= std::pow(2.0 * kPi, -0.5 * F.grid->dimension());
    x_[0] = -rho[0];
    yr_[0] = F.coeffs[0].real();
    yi_[0] = F.coeffs[0].imag();
    x_[1] = 0.0;
    yr_[1] = f0.real();
    yi_[1] = f0.imag();
    for (int i = 0; i < n; ++i) {
      x_[i + 2] = rho[i];
      yr_[i + 2] = F.coeffs[i].real();
      yi_[i + 2] = F.coeffs[i].imag();
    }
    edge_ = rho[n - 1];
    acc_r_ = gsl_interp_accel_alloc();
    acc_i_ = gsl_interp_accel_alloc();
    sp_r_ = gsl_spline_alloc(gsl_interp_cspline, x_.size());
    sp_i_ = gsl_spline_alloc(gsl_interp_cspline, x_.size());
    gsl_spline_init(sp_r_, x_.data(), yr_.data(), x_.size());
    gsl_spline_init(sp_i_, x_.data(), yi_.data(), x_.size());
  }
  ~SpectralInterp() {
    gsl_spline_free(sp_r_);
    gsl_spline_free(sp_i_);
    gsl_interp_accel_free(acc_r_);
    gsl_interp_accel_free(acc_i_);
  }
  SpectralInterp(const SpectralInterp&) = delete;
  SpectralInterp& operator=(const SpectralInterp&) = delete;

  Complex operator()(double rho) const {
    if (rho >= edge_) return Complex(0.0, 0.0);
    return Complex(gsl_spline_eval(sp_r_, rho, acc_r_), gsl_spline_eval(sp_i_, rho, acc_i_));
  }

 private:
  std::vector<double> x_, yr_, yi_;
  double edge_;
  gsl_interp_accel *acc_r_, *acc_i_;
  gsl_spline *sp_r_, *sp_i_;
};

}  // namespace

RadialField bilinear_apply(const BilinearSymbol& symbol, const RadialField& f,
                           const RadialField& g, const BilinearOptions& opts) {
  require_same_grid(f, g);
  const GridPtr& grid = f.grid;
  const int d = grid->dimension();
  const int n = grid->size();
  const SpectralField F = transform(f);
  const SpectralField G = transform(g);
  const SpectralInterp fsp(F);

  // eta radial quadrature weights: freq_weights / c_d integrates
  // h(|eta|) |eta|^{d-1} d|eta| over the band.
  Eigen::VectorXd wq = grid->freq_weights() / grid->sphere_area();

  // angle rule and overall prefactor
  int angle_n = std::max(2, opts.angle_nodes);
  std::vector<double> cos_a, w_a;
  double pref = 0.0;
  if (d == 1) {
    cos_a = {1.0, -1.0};
    w_a = {1.0, 1.0};
    pref = std::pow(2.0 * kPi, -0.5);
  } else {
    gsl_integration_glfixed_table* tbl = gsl_integration_glfixed_table_alloc(angle_n);
    cos_a.resize(angle_n);
    w_a.resize(angle_n);
    for (int a = 0; a < angle_n; ++a) {
      double th, wt;
      gsl_integration_glfixed_point(0.0, kPi, a, &th, &wt, tbl);
      cos_a[a] = std::cos(th);
      w_a[a] = wt * std::pow(std::sin(th), d - 2);
    }
    gsl_integration_glfixed_table_free(tbl);
    const double sphere_dm2 = d == 3 ? 2.0 * kPi : 4.0 * kPi;  // area of S^{d-2}
    pref = std::pow(2.0 * kPi, -0.5 * d) * sphere_dm2;
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const auto& rho = grid->freq_nodes();
  auto work = [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double xi = rho[i];
      Complex acc(0.0, 0.0);
      for (int m = 0; m < n; ++m) {
        const Complex gm = G.coeffs[m];
        if (gm == Complex(0.0, 0.0)) continue;
        const double eta = rho[m];
        Complex ang(0.0, 0.0);
        for (size_t a = 0; a < cos_a.size(); ++a) {
          const double w2 = xi * xi + eta * eta - 2.0 * xi * eta * cos_a[a];
          const double w = std::sqrt(std::max(w2, 0.0));
          const Complex sym = symbol(w, eta, xi);
          ang += w_a[a] * sym * fsp(w);
        }
        acc += wq[m] * gm * ang;
      }
      if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        throw NumericError("bilinear symbol produced non-finite quadrature value");
      out[i] = pref * acc;
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1 || n < 64) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int a = t * chunk, b = std::min(n, (t + 1) * chunk);
      if (a < b) pool.emplace_back(work, a, b);
    }
    for (auto& th : pool) th.join();
  }

  return inverse_transform(SpectralField(grid, std::move(out)));
}

RadialField omega(const RadialField& f, const RadialField& g, const ModulationSpec& spec,
                  const AnalysisParams& params, const BilinearOptions& opts) {
  auto sym_for = [&params](ModulationSpec s) {
    return [&params, s](double w, double eta, double xi) -> Complex {
      const double m = m_ll(w, eta, params);
      if (m == 0.0) return Complex(0.0, 0.0);
      const double phi = modulation_phi_from_lengths(xi, w, eta, s);
      return m / Complex(0.0, phi);
    };
  };
  // Symmetrized discretization: the quadrature treats the two slots
  // differently, so Omega_{i1,i2}(f,g) is realized as the average of the
  // (f,g) and swapped (g,f) applications; the continuum identity
  // Omega_{i1,i2}(f,g) = Omega_{i2,i1}(g,f) then holds exactly.
  if (spec.iota1 == spec.iota2 && f.values == g.values)
    return bilinear_apply(sym_for(spec), f, g, opts);
  const RadialField a = bilinear_apply(sym_for(spec), f, g, opts);
  const RadialField b =
      bilinear_apply(sym_for(ModulationSpec{spec.iota2, spec.iota1}), g, f, opts);
  return 0.5 * (a + b);
}

RadialField normal_form_correction(const RadialField& u, const AnalysisParams& params,
                                   const BilinearOptions& opts) {
  const RadialField ub = conj(u);
  RadialField sum = omega(u, u, ModulationSpec{+1, +1}, params, opts);
  sum = sum + omega(u, ub, ModulationSpec{+1, -1}, params, opts);
  sum = sum + omega(ub, u, ModulationSpec{-1, +1}, params, opts);
  sum = sum + omega(ub, ub, ModulationSpec{-1, -1}, params, opts);
  RadialField scaled = Complex(0.0, 0.25) * sum;
  return bessel_potential(scaled, -1.0);
}

ResonanceSplit resonance_split(const RadialField& f, const RadialField& g,
                               const AnalysisParams& params) {
  require_same_grid(f, g);
  const double kcut = -params.beta + 10.0;
  const RadialField fl = lp_project_below(f, kcut);
  const RadialField gl = lp_project_below(g, kcut);
  ResonanceSplit out{pointwise_product(fl, gl), RadialField()};
  out.rest = pointwise_product(f, g) - out.ll;
  return out;
}

namespace {

// Composite Simpson weights for \int_{t_0}^{t_n} over n uniform intervals;
// 3/8 block at the tail when n is odd, trapezoid only for n = 1.
std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(n + 1, 0.0);
  if (n <= 0) return w;
  if (n == 1) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  int even_end = n % 2 == 0 ? n : n - 3;
  for (int j = 0; j + 2 <= even_end; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (n % 2 != 0) {
    if (n == 3) {
      w[0] += 3.0 * h / 8.0;
      w[1] += 9.0 * h / 8.0;
      w[2] += 9.0 * h / 8.0;
      w[3] += 3.0 * h / 8.0;
    } else {
      w[n - 3] += 3.0 * h / 8.0;
      w[n - 2] += 9.0 * h / 8.0;
      w[n - 1] += 9.0 * h / 8.0;
      w[n] += 3.0 * h / 8.0;
    }
  }
  return w;
}

}  // namespace

std::vector<double> normal_form_residual(const Trajectory& traj, const AnalysisParams& params,
                                         const BilinearOptions& opts) {
  if (traj.size() < 3) throw ParameterError("normal_form_residual: need at least 3 samples");
  if (traj.model == TrajModel::Real)
    throw ParameterError(
        "normal_form_residual: reduction is stated for the first-order model with forcing "
        "<D>^{-1}(U^2); run the usquare (or free) model");
  const bool forced = traj.model == TrajModel::ComplexSquare;
  const GridPtr& grid = traj.grid;
  const int n = grid->size();
  const size_t m = traj.size();
  const double h = traj.dt();
  const auto& rho = grid->freq_nodes();
  Eigen::VectorXd brk(n), brk_inv(n);
  for (int i = 0; i < n; ++i) {
    brk[i] = bracket(rho[i]);
    brk_inv[i] = 1.0 / brk[i];
  }
  const ModulationSpec pp{+1, +1};

  // Per-sample spectral pieces.
  std::vector<Eigen::VectorXcd> w_corr(m);      // <D>^{-1} Omega(U,U)
  std::vector<Eigen::VectorXcd> duh(m);         // K(-s) x (integrand at s)
  for (size_t j = 0; j < m; ++j) {
    const RadialField U = traj.field_at(j);
    const Eigen::VectorXcd om = transform(omega(U, U, pp, params, opts)).coeffs;
    w_corr[j] = brk_inv.cwiseProduct(om);

    const Eigen::VectorXcd usq = grid->forward(Eigen::VectorXcd(U.values.array().square()));
    Eigen::VectorXcd integrand;
    if (forced) {
      // -i <D>^{-1} T_res + <D>^{-1} (Omega(<D>^{-1}U^2, U) + Omega(U, <D>^{-1}U^2))
      const double kcut = -params.beta + 10.0;
      const RadialField ul = lp_project_below(U, kcut);
      const Eigen::VectorXcd llsq = grid->forward(Eigen::VectorXcd(ul.values.array().square()));
      const Eigen::VectorXcd tres = usq - llsq;
      const RadialField a(grid, grid->inverse(Eigen::VectorXcd(brk_inv.cwiseProduct(usq))));
      // For the symmetric (+,+) symbol the pair Omega(a,U) + Omega(U,a)
      // equals the two raw applications, so skip the symmetrizing average.
      auto sym_pp = [&params](double w, double eta, double xi) -> Complex {
        const double m = m_ll(w, eta, params);
        if (m == 0.0) return Complex(0.0, 0.0);
        return m / Complex(0.0, modulation_phi_from_lengths(xi, w, eta, ModulationSpec{+1, +1}));
      };
      const Eigen::VectorXcd tri =
          transform(bilinear_apply(sym_pp, a, U, opts) + bilinear_apply(sym_pp, U, a, opts))
              .coeffs;
      integrand = Complex(0.0, -1.0) * brk_inv.cwiseProduct(tres) + brk_inv.cwiseProduct(tri);
    } else {
      // free flow: + i <D>^{-1} (UU)_LL
      const double kcut = -params.beta + 10.0;
      const RadialField ul = lp_project_below(U, kcut);
      const Eigen::VectorXcd llsq = grid->forward(Eigen::VectorXcd(ul.values.array().square()));
      integrand = Complex(0.0, 1.0) * brk_inv.cwiseProduct(llsq);
    }
    const double s = traj.times[j];
    Eigen::VectorXcd phase(n);
    for (int i = 0; i < n; ++i) phase[i] = std::exp(Complex(0.0, -s * brk[i]));
    duh[j] = phase.cwiseProduct(integrand);
  }

  // K(t_0)-twisted initial data U_0 + i W(0)
  Eigen::VectorXcd init = traj.states[0] + Complex(0.0, 1.0) * w_corr[0];
  const double t0 = traj.times[0];
  for (int i = 0; i < n; ++i) init[i] *= std::exp(Complex(0.0, -t0 * brk[i]));

  std::vector<double> residuals(m, 0.0);
  const auto& ws = grid->freq_weights();
  for (size_t jn = 0; jn < m; ++jn) {
    const double t = traj.times[jn];
    const std::vector<double> sw = simpson_weights(static_cast<int>(jn), h);
    Eigen::VectorXcd integral = Eigen::VectorXcd::Zero(n);
    for (size_t j = 0; j <= jn; ++j)
      if (sw[j] != 0.0) integral += sw[j] * duh[j];
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
      const Complex kf = std::exp(Complex(0.0, t * brk[i]));
      rhs[i] = kf * (init[i] + integral[i]) - Complex(0.0, 1.0) * w_corr[jn][i];
    }
    double acc = 0.0;
    const Eigen::VectorXcd diff = traj.states[jn] - rhs;
    for (int i = 0; i < n; ++i) acc += ws[i] * brk[i] * brk[i] * std::norm(diff[i]);
    residuals[jn] = std::sqrt(acc);
  }
  return residuals;
}

}  // namespace kg
