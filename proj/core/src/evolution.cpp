#include "kg/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "kg/cutoff.hpp"
#include "kg/spectral.hpp"

namespace kg {

RadialField SimState::u() const {
  return inverse_transform(SpectralField(uhat.grid, uhat.coeffs.real().cast<Complex>()));
}

RadialField SimState::ut() const {
  Eigen::VectorXcd c(uhat.coeffs.size());
  for (int i = 0; i < c.size(); ++i)
    c[i] = Complex(-bracket(uhat.grid->freq_nodes()[i]) * uhat.coeffs[i].imag(), 0.0);
  return inverse_transform(SpectralField(uhat.grid, std::move(c)));
}

SimState make_state(const RadialField& u0, const RadialField& u1, double t) {
  require_same_grid(u0, u1);
  const Eigen::VectorXcd a = u0.grid->forward(u0.values);
  const Eigen::VectorXcd b = u0.grid->forward(u1.values);
  Eigen::VectorXcd c(a.size());
  for (int i = 0; i < c.size(); ++i)
    c[i] = a[i] - Complex(0.0, 1.0) / bracket(u0.grid->freq_nodes()[i]) * b[i];
  return SimState{SpectralField(u0.grid, std::move(c)), t};
}

namespace {

// Nonlinear part of dU/dt = i<D>U - i<D>^{-1} f, in spectral variables.
Eigen::VectorXcd nonlinear_rhs(const GridPtr& grid, const Eigen::VectorXcd& uhat,
                               const Nonlinearity& nl) {
  const int n = grid->size();
  Eigen::VectorXcd fhat;
  if (nl.kind() == Nonlinearity::Kind::ComplexSquare) {
    const Eigen::VectorXcd uphys = grid->inverse(uhat);
    fhat = grid->forward(Eigen::VectorXcd(uphys.array().square()));
  } else {
    const Eigen::VectorXd u = grid->inverse(Eigen::VectorXd(uhat.real()));
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = nl.f(u[i]);
    fhat = grid->forward(f).cast<Complex>();
  }
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i)
    out[i] = Complex(0.0, -1.0) / bracket(grid->freq_nodes()[i]) * fhat[i];
  return out;
}

// Interaction-picture RK4: classical RK4 on V = K(-t) U with the half-wave
// factors applied exactly.
struct Stepper {
  GridPtr grid;
  double dt;
  Eigen::VectorXcd e_half, e_full;

  Stepper(GridPtr g, double step) : grid(std::move(g)), dt(step) {
    const int n = grid->size();
    e_half.resize(n);
    e_full.resize(n);
    for (int i = 0; i < n; ++i) {
      const double b = bracket(grid->freq_nodes()[i]);
      e_half[i] = std::exp(Complex(0.0, 0.5 * dt * b));
      e_full[i] = e_half[i] * e_half[i];
    }
  }

  Eigen::VectorXcd advance(const Eigen::VectorXcd& u, const Nonlinearity& nl) const {
    const double h = dt;
    const Eigen::VectorXcd n1 = nonlinear_rhs(grid, u, nl);
    const Eigen::VectorXcd n2 =
        nonlinear_rhs(grid, Eigen::VectorXcd(e_half.cwiseProduct(Eigen::VectorXcd(u + 0.5 * h * n1))), nl);
    const Eigen::VectorXcd n3 =
        nonlinear_rhs(grid, Eigen::VectorXcd(e_half.cwiseProduct(u) + 0.5 * h * n2), nl);
    const Eigen::VectorXcd n4 = nonlinear_rhs(
        grid, Eigen::VectorXcd(e_full.cwiseProduct(u) + h * e_half.cwiseProduct(n3)), nl);
    return e_full.cwiseProduct(Eigen::VectorXcd(u + (h / 6.0) * n1)) +
           (h / 3.0) * e_half.cwiseProduct(Eigen::VectorXcd(n2 + n3)) + (h / 6.0) * n4;
  }
};

double linear_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty()) return 0.0;
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = it - xs.begin();
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

struct SpectralScalars {
  double l2_sq = 0.0;     // ||u||_2^2
  double h1_sq = 0.0;     // ||u||_{H^1}^2
  double ut_sq = 0.0;     // ||u_t||_2^2
  double uh1_sq = 0.0;    // ||U||_{H^1}^2
  double tail_frac = 0.0; // H^1 mass fraction in the top dyadic band
};

SpectralScalars spectral_scalars(const GridPtr& grid, const Eigen::VectorXcd& uhat) {
  SpectralScalars s;
  const int n = grid->size();
  double tail = 0.0;
  const double rho_tail = 0.5 * grid->freq_nodes()[n - 1];
  for (int i = 0; i < n; ++i) {
    const double rho = grid->freq_nodes()[i];
    const double b2 = 1.0 + rho * rho;
    const double ws = grid->freq_weights()[i];
    const double re2 = uhat[i].real() * uhat[i].real();
    const double im2 = uhat[i].imag() * uhat[i].imag();
    s.l2_sq += ws * re2;
    s.h1_sq += ws * b2 * re2;
    s.ut_sq += ws * b2 * im2;
    s.uh1_sq += ws * b2 * (re2 + im2);
    if (rho >= rho_tail) tail += ws * b2 * (re2 + im2);
  }
  s.tail_frac = s.uh1_sq > 0.0 ? tail / s.uh1_sq : 0.0;
  return s;
}

std::vector<std::array<double, 4>> dyadic_cube_windows(const std::vector<double>& ts,
                                                       const std::vector<double>& cum,
                                                       double R) {
  std::vector<std::array<double, 4>> out;
  if (ts.empty()) return out;
  for (double T = 1.0; 2.0 * T <= ts.back() + 1e-12; T *= 2.0) {
    const double integral = linear_interp(ts, cum, 2.0 * T) - linear_interp(ts, cum, T);
    out.push_back({T, 2.0 * T, integral, R + T * std::pow(R, -1.5)});
  }
  return out;
}

}  // namespace

SimState step(const SimState& state, double dt, const Nonlinearity& nl) {
  if (!(dt > 0.0)) throw ParameterError("step: dt must be positive");
  if (nl.kind() == Nonlinearity::Kind::None)
    return SimState{half_wave(state.uhat, dt), state.t + dt};
  Stepper st(state.uhat.grid, dt);
  return SimState{SpectralField(state.uhat.grid, st.advance(state.uhat.coeffs, nl)),
                  state.t + dt};
}

EvolveResult evolve(const RadialField& u0, const RadialField& u1, const Nonlinearity& nl,
                    const EvolveOptions& opts) {
  require_same_grid(u0, u1);
  if (!(opts.dt > 0.0) || !(opts.t_end > 0.0))
    throw ParameterError("evolve: dt and t_end must be positive");
  if (opts.stride < 1) throw ParameterError("evolve: stride must be >= 1");
  const GridPtr grid = u0.grid;
  const int n = grid->size();
  const int d = grid->dimension();
  const bool real_model = nl.kind() == Nonlinearity::Kind::Quadratic ||
                          nl.kind() == Nonlinearity::Kind::Phi4 ||
                          nl.kind() == Nonlinearity::Kind::Power;

  const bool track_m = opts.track_morawetz && opts.thresholds.morawetz_r > 0.0;
  if (track_m && opts.thresholds.morawetz_r > grid->r_max() / 2.0)
    throw ParameterError("evolve: morawetz radius R must be <= r_max / 2");
  MorawetzWeights mw;
  if (track_m) mw = make_morawetz_weights(grid, opts.thresholds.morawetz_r);
  const double cube_R = opts.thresholds.morawetz_r > 0.0 ? opts.thresholds.morawetz_r
                                                         : grid->r_max() / 4.0;

  EvolveResult result;
  RunRecord& rec = result.record;
  rec.columns = {"t", "E", "H1", "L2sq", "M", "L3", "windowed_cube", "ut_L2", "cube_loc", "K10"};
  if (opts.track_besov) rec.columns.push_back("besov_b01");
  result.trajectory.grid = grid;
  result.trajectory.model = nl.kind() == Nonlinearity::Kind::None ? TrajModel::Free
                            : real_model                          ? TrajModel::Real
                                                                  : TrajModel::ComplexSquare;

  const long total_steps = std::lround(opts.t_end / opts.dt);
  const Stepper stepper(grid, opts.dt);
  SimState state = make_state(u0, u1, 0.0);

  // scattering snapshot steps: T/2, 3T/4, T (snapped to the sample stride)
  std::vector<long> snap_steps;
  if (opts.track_scattering) {
    for (double frac : {0.5, 0.75, 1.0}) {
      long s = std::lround(frac * total_steps / opts.stride) * opts.stride;
      s = std::min(s, total_steps);
      if (snap_steps.empty() || s != snap_steps.back()) snap_steps.push_back(s);
    }
  }
  std::vector<double> snap_times;
  std::vector<Eigen::VectorXcd> snap_states;

  const int boundary_start = std::max(0, n - std::max(2, n / 20));

  double e0 = 0.0, h1u0 = 0.0;
  std::vector<double> cum_t, cum_cube;
  double cube_cum = 0.0, prev_cube = 0.0;
  bool first_sample = true;
  double resolved_until = opts.t_end;
  bool resolution_warned = false;

  for (long istep = 0;; ++istep) {
    const double t = istep * opts.dt;
    const bool last = istep >= total_steps;
    if (istep % opts.stride == 0 || last) {
      if (!state.uhat.coeffs.allFinite()) {
        rec.verdict = "BlewUp";
        rec.t_detect = t;
        rec.resolved = false;
        if (resolved_until >= t) resolved_until = std::max(0.0, t - 2.0 * opts.stride * opts.dt);
        rec.warnings.push_back("integrator overflow at t=" + format_double(t));
        break;
      }
      const SpectralScalars sc = spectral_scalars(grid, state.uhat.coeffs);
      const RadialField uf = state.u();
      const RadialField Uf = state.U();
      const Eigen::VectorXd ur = uf.values.real();

      double pot = 0.0, cube_loc = 0.0, k10 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double w = grid->weights()[i];
        if (real_model) pot += w * nl.F(ur[i]);
        if (grid->nodes()[i] <= cube_R) cube_loc += w * std::pow(std::abs(ur[i]), 3.0);
      }
      const double energy_now = 0.5 * (sc.ut_sq + sc.h1_sq) - pot;
      if (real_model) {
        double int_uf_ = 0.0;
        for (int i = 0; i < n; ++i) int_uf_ += grid->weights()[i] * ur[i] * nl.f(ur[i]);
        k10 = sc.h1_sq - int_uf_;
      }
      const double l3 = lr_norm(Uf, 3.0);
      const double m_val = track_m ? morawetz_m(state, mw) : 0.0;

      // cumulative localized cube integral and its trailing dyadic window
      if (!first_sample) {
        const double dt_s = t - cum_t.back();
        cube_cum += 0.5 * dt_s * (prev_cube + cube_loc);
      }
      cum_t.push_back(t);
      cum_cube.push_back(cube_cum);
      prev_cube = cube_loc;
      const double windowed = cube_cum - linear_interp(cum_t, cum_cube, 0.5 * t);

      std::vector<double> row = {t,
                                 energy_now,
                                 std::sqrt(sc.h1_sq),
                                 sc.l2_sq,
                                 m_val,
                                 l3,
                                 windowed,
                                 std::sqrt(sc.ut_sq),
                                 cube_loc,
                                 k10};
      if (opts.track_besov) row.push_back(besov_norm(uf, BesovSpec{2.0, 0.0, 1.0}));
      rec.rows.push_back(std::move(row));

      if (first_sample) {
        e0 = energy_now;
        h1u0 = std::sqrt(sc.h1_sq);
        first_sample = false;
      } else {
        if (t >= 1.0 && std::abs(e0) > 0.0)
          rec.e_drift_per_time =
              std::max(rec.e_drift_per_time, std::abs(energy_now - e0) / (std::abs(e0) * t));
        if (std::sqrt(sc.h1_sq) > opts.thresholds.blowup_factor * std::max(h1u0, 1e-300)) {
          rec.verdict = "BlewUp";
          rec.t_detect = t;
          break;
        }
      }

      // resolution monitors
      if (!resolution_warned && sc.tail_frac > 1e-3) {
        resolution_warned = true;
        resolved_until = t;
        rec.warnings.push_back("spectral tail fraction " + format_double(sc.tail_frac) +
                               " at t=" + format_double(t) + "; run under-resolved from here");
      }
      double umax = 0.0, bmax = 0.0;
      for (int i = 0; i < n; ++i) {
        const double a = std::abs(Uf.values[i]);
        umax = std::max(umax, a);
        if (i >= boundary_start) bmax = std::max(bmax, a);
      }
      if (umax > 0.0 && bmax > opts.thresholds.boundary_frac * umax) {
        rec.resolved = false;
        resolved_until = std::min(resolved_until, t);
        rec.warnings.push_back("boundary contamination at t=" + format_double(t) +
                               " (fraction " + format_double(bmax / umax) + "); run aborted");
        break;
      }

      if (opts.store_fields) {
        result.trajectory.times.push_back(t);
        result.trajectory.states.push_back(state.uhat.coeffs);
      }
      if (!snap_steps.empty() &&
          std::find(snap_steps.begin(), snap_steps.end(), istep) != snap_steps.end()) {
        snap_times.push_back(t);
        snap_states.push_back(state.uhat.coeffs);
      }
    }
    if (last) break;
    state = SimState{SpectralField(grid, stepper.advance(state.uhat.coeffs, nl)), t + opts.dt};
  }

  if (resolution_warned) rec.resolved = false;
  rec.config["resolved_until"] = format_double(resolved_until);
  rec.cube_windows = dyadic_cube_windows(cum_t, cum_cube, cube_R);

  if (!opts.store_fields && !snap_times.empty()) {
    result.trajectory.times = snap_times;
    result.trajectory.states = snap_states;
  }

  if (rec.verdict != "BlewUp" && opts.track_scattering && snap_times.size() >= 3) {
    Trajectory snaps;
    snaps.grid = grid;
    snaps.model = result.trajectory.model;
    snaps.times = snap_times;
    snaps.states = snap_states;
    const ScatteringReport sr = scattering_extract(snaps, snap_times,
                                                   opts.thresholds.scatter_cauchy, opts.analysis,
                                                   opts.bilinear);
    rec.scatter_times = sr.times;
    rec.scatter_consecutive = sr.consecutive;
    rec.scatter_omega_h1 = sr.omega_h1;
    if (sr.scattered && rec.resolved) {
      rec.verdict = "Scattered";
      result.u_plus = sr.u_plus;
    }
  }

  (void)d;
  return result;
}

BlowupReport detect_blowup(const RunRecord& record) {
  BlowupReport rep;
  rep.blew_up = record.verdict == "BlewUp";
  rep.t_detect = record.t_detect;
  if (record.rows.size() < 5) return rep;

  const std::vector<double> t = record.column("t");
  const std::vector<double> y = record.column("L2sq");
  const std::vector<double> ut = record.column("ut_L2");
  const std::vector<double> e = record.column("E");
  const std::vector<double> h1 = record.column("H1");
  double resolved_until = t.back();
  if (auto it = record.config.find("resolved_until"); it != record.config.end())
    resolved_until = std::stod(it->second);

  const double dt = t[1] - t[0];
  std::vector<double> rhs_all(t.size());
  for (size_t i = 0; i < t.size(); ++i)
    rhs_all[i] = 5.0 * ut[i] * ut[i] - 6.0 * e[0] + h1[i] * h1[i];
  double scale = 0.0;
  for (size_t i = 2; i + 2 < t.size(); ++i)
    if (t[i] <= resolved_until) scale = std::max(scale, std::abs(rhs_all[i]));
  if (scale == 0.0) scale = 1.0;

  for (size_t i = 2; i + 2 < t.size(); ++i) {
    if (t[i] > resolved_until) break;
    const double d2y =
        (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) /
        (12.0 * dt * dt);
    const double res = std::abs(d2y - rhs_all[i]) / scale;
    rep.times.push_back(t[i]);
    rep.identity_residual.push_back(res);
    rep.max_identity_residual = std::max(rep.max_identity_residual, res);
  }
  return rep;
}

MorawetzWeights make_morawetz_weights(const GridPtr& grid, double R) {
  if (!(R > 0.0)) throw ParameterError("morawetz weights: R must be positive");
  if (R > grid->r_max() / 2.0) throw ParameterError("morawetz weights: R must be <= r_max / 2");
  const int d = grid->dimension();
  const int n = grid->size();
  MorawetzWeights mw;
  mw.R = R;
  mw.chi_sq.resize(n);
  mw.varphi.resize(n);
  mw.div_psi.resize(n);
  mw.lap_div_psi.resize(n);
  mw.phi_over_r_minus_dphi.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = grid->nodes()[i];
    const double x = r / R;
    const double chi = cutoff_chi(x);
    const double chi1 = cutoff_chi_d1(x);
    const double chi2 = cutoff_chi_d2(x);
    const double phi = R * cutoff_chi_sq_integral(x);
    const double dphi = chi * chi;
    const double d2phi = 2.0 * chi * chi1 / R;
    const double d3phi = 2.0 * (chi1 * chi1 + chi * chi2) / (R * R);
    mw.chi_sq[i] = dphi;
    mw.varphi[i] = phi;
    mw.div_psi[i] = (d - 1) * phi / r + dphi;
    mw.phi_over_r_minus_dphi[i] = phi / r - dphi;
    mw.lap_div_psi[i] =
        d3phi + 2.0 * (d - 1) / r * d2phi - (d - 1) * (d - 3) / (r * r) * (phi / r - dphi);
  }
  return mw;
}

double morawetz_m(const SimState& state, const MorawetzWeights& mw) {
  const GridPtr& grid = state.uhat.grid;
  const int n = grid->size();
  const Eigen::VectorXd u = grid->inverse(Eigen::VectorXd(state.uhat.coeffs.real()));
  Eigen::VectorXd uthat(n);
  for (int i = 0; i < n; ++i)
    uthat[i] = -bracket(grid->freq_nodes()[i]) * state.uhat.coeffs[i].imag();
  const Eigen::VectorXd ut = grid->inverse(uthat);
  const Eigen::VectorXd dudr = grid->radial_derivative(Eigen::VectorXd(state.uhat.coeffs.real()));
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += grid->weights()[i] * ut[i] * (mw.varphi[i] * dudr[i] + 0.5 * mw.div_psi[i] * u[i]);
  return -acc;
}

MorawetzReport morawetz_track(const Trajectory& traj, double R, const Nonlinearity& nl) {
  if (traj.size() < 5) throw ParameterError("morawetz_track: need at least 5 samples");
  const GridPtr& grid = traj.grid;
  const int n = grid->size();
  const MorawetzWeights mw = make_morawetz_weights(grid, R);
  MorawetzReport rep;
  rep.times = traj.times;

  std::vector<double> rhs(traj.size());
  std::vector<double> cube(traj.size());
  for (size_t j = 0; j < traj.size(); ++j) {
    SimState st{SpectralField(grid, traj.states[j]), traj.times[j]};
    rep.m_series.push_back(morawetz_m(st, mw));
    const Eigen::VectorXd u = grid->inverse(Eigen::VectorXd(traj.states[j].real()));
    const Eigen::VectorXd dudr = grid->radial_derivative(Eigen::VectorXd(traj.states[j].real()));
    double acc = 0.0, cb = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = grid->weights()[i];
      const double r = grid->nodes()[i];
      // dM/dt = int chi_R^2 |d_r u|^2 - int (div Psi / 2) G(u) - 1/4 int (Lap div Psi) u^2
      acc += w * mw.chi_sq[i] * dudr[i] * dudr[i];
      acc -= w * 0.5 * mw.div_psi[i] * nl.G(u[i]);
      acc -= 0.25 * w * mw.lap_div_psi[i] * u[i] * u[i];
      if (r <= R) cb += w * std::pow(std::abs(u[i]), 3.0);
    }
    rhs[j] = acc;
    cube[j] = cb;
    rep.max_abs_m_over_r = std::max(rep.max_abs_m_over_r, std::abs(rep.m_series.back()) / R);
  }

  const double dt = traj.dt();
  double scale = 0.0;
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  rep.identity_residual.assign(traj.size(), 0.0);
  for (size_t j = 2; j + 2 < traj.size(); ++j) {
    const double dmdt = (rep.m_series[j - 2] - 8.0 * rep.m_series[j - 1] +
                         8.0 * rep.m_series[j + 1] - rep.m_series[j + 2]) /
                        (12.0 * dt);
    const double res = std::abs(dmdt - rhs[j]) / scale;
    rep.identity_residual[j] = res;
    rep.max_identity_residual = std::max(rep.max_identity_residual, res);
  }

  std::vector<double> cum(traj.size(), 0.0);
  for (size_t j = 1; j < traj.size(); ++j)
    cum[j] = cum[j - 1] + 0.5 * dt * (cube[j - 1] + cube[j]);
  rep.windows = dyadic_cube_windows(rep.times, cum, R);
  return rep;
}

L3Report l3_track(const std::vector<double>& times, const std::vector<double>& l3_series,
                  double tau1) {
  if (times.size() != l3_series.size() || times.empty())
    throw ParameterError("l3_track: empty or mismatched series");
  L3Report rep;
  rep.times = times;
  rep.u3_series = l3_series;
  rep.best_window_sup = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < times.size(); ++i) {
    double sup = 0.0;
    size_t j = i;
    for (; j < times.size() && times[j] <= times[i] + tau1; ++j)
      sup = std::max(sup, l3_series[j]);
    if (times[i] + tau1 > times.back() + 1e-12) break;  // incomplete window
    if (sup < rep.best_window_sup) {
      rep.best_window_sup = sup;
      rep.best_window_start = times[i];
    }
  }
  if (!std::isfinite(rep.best_window_sup)) {
    rep.best_window_start = times.front();
    rep.best_window_sup = *std::max_element(l3_series.begin(), l3_series.end());
  }
  return rep;
}

ScatteringReport scattering_extract(const Trajectory& traj, const std::vector<double>& times,
                                    double cauchy_threshold, const AnalysisParams& params,
                                    const BilinearOptions& opts) {
  if (times.size() < 3) throw ParameterError("scattering_extract: need at least 3 sample times");
  const GridPtr& grid = traj.grid;
  const int n = grid->size();
  ScatteringReport rep;

  std::vector<Eigen::VectorXcd> v;
  for (double want : times) {
    size_t best = 0;
    for (size_t j = 1; j < traj.size(); ++j)
      if (std::abs(traj.times[j] - want) < std::abs(traj.times[best] - want)) best = j;
    const double t = traj.times[best];
    rep.times.push_back(t);
    Eigen::VectorXcd vi(n);
    for (int i = 0; i < n; ++i)
      vi[i] = std::exp(Complex(0.0, -t * bracket(grid->freq_nodes()[i]))) * traj.states[best][i];
    v.push_back(std::move(vi));

    const RadialField U = traj.field_at(best);
    rep.omega_h1.push_back(
        sobolev_norm(transform(omega(U, U, ModulationSpec{+1, +1}, params, opts)), 1.0));
  }

  auto h1_diff = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double rho = grid->freq_nodes()[i];
      acc += grid->freq_weights()[i] * (1.0 + rho * rho) * std::norm(a[i] - b[i]);
    }
    return std::sqrt(acc);
  };

  rep.cauchy.assign(v.size(), std::vector<double>(v.size(), 0.0));
  for (size_t a = 0; a < v.size(); ++a)
    for (size_t b = 0; b < v.size(); ++b) rep.cauchy[a][b] = a == b ? 0.0 : h1_diff(v[a], v[b]);
  for (size_t a = 0; a + 1 < v.size(); ++a) rep.consecutive.push_back(rep.cauchy[a][a + 1]);

  bool monotone = true;
  for (size_t a = 0; a + 1 < rep.consecutive.size(); ++a)
    if (rep.consecutive[a + 1] > rep.consecutive[a]) monotone = false;
  rep.scattered = monotone && rep.consecutive.back() < cauchy_threshold;
  rep.u_plus = v.back();
  return rep;
}

}  // namespace kg
