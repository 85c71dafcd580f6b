// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failures.
// Optional arguments select individual criteria by number.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kg/checks.hpp"
#include "kg/config.hpp"
#include "kg/evolution.hpp"
#include "kg/record.hpp"
#include "oracles.hpp"

using namespace kg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---- shared d=4 reference objects -----------------------------------------

const GridPtr& grid4_small() {  // identity work: R=40, N=512
  static GridPtr g = make_grid(4, 40.0, 512);
  return g;
}
const GroundState& q4_small() {
  static GroundState q = solve_ground_state(grid4_small(), 1);
  return q;
}

// the dichotomy grid: R_max placed so no reflected radiation returns by T=50
const GridPtr& grid_dich() {
  static GridPtr g = make_grid(4, 72.0, 512);
  return g;
}
const GroundState& q_dich() {
  static GroundState q = solve_ground_state(grid_dich(), 1);
  return q;
}

struct SweepRun {
  RunRecord record;
  Trajectory trajectory;
};

// criterion 9's six runs; 0.8 stores fields for criteria 8 and 10
double g_sweep_elapsed = 0.0;
const std::map<double, SweepRun>& sweep_runs() {
  static std::map<double, SweepRun> runs = [] {
    const double t0 = now_s();
    std::map<double, SweepRun> out;
    const GroundState& q = q_dich();
    const RadialField z = RadialField::zero(grid_dich());
    for (double lam : {0.6, 0.8, 0.9, 1.1, 1.2, 1.5}) {
      EvolveOptions eo;
      eo.t_end = 50.0;
      eo.dt = 1e-3;
      eo.stride = 10;
      eo.thresholds.morawetz_r = 10.0;
      eo.store_fields = lam == 0.8;
      eo.track_scattering = lam < 1.0;
      EvolveResult res = evolve(lam * q.profile, z, Nonlinearity::quadratic(), eo);
      out[lam] = SweepRun{std::move(res.record), std::move(res.trajectory)};
      std::fprintf(stderr, "  [sweep] lambda=%g verdict=%s t_detect=%g\n", lam,
                   out[lam].record.verdict.c_str(), out[lam].record.t_detect);
    }
    g_sweep_elapsed = now_s() - t0;
    return out;
  }();
  return runs;
}

// ---- criteria -------------------------------------------------------------

Outcome c1_ground_state_1d() {
  const double t0 = now_s();
  auto g = make_grid(1, 40.0, 512);
  const GroundState gs = solve_ground_state(g, 1);
  double sup = 0.0;
  for (int i = 0; i < g->size(); ++i) {
    const double x = g->nodes()[i];
    const double exact = 1.5 / (std::cosh(0.5 * x) * std::cosh(0.5 * x));
    sup = std::max(sup, std::abs(gs.profile.values[i].real() - exact));
  }
  const double dt = now_s() - t0;
  const double berr = std::abs(gs.b_star - 1.5);
  const bool pass = sup < 1e-6 && berr < 1e-6 && dt < 1.0;
  return {pass, fmt("sup|Q - (3/2)sech^2(x/2)| = %.2e, |b*-1.5| = %.2e, %.2fs", sup, berr, dt)};
}

Outcome c2_ground_state_identities() {
  const double t0 = now_s();
  const GroundState& q4 = q4_small();
  const double r_grad = std::abs(q4.grad_sq - 2.0 * q4.mass_sq) / q4.mass_sq;
  const double r_pot = std::abs(q4.pot_int - 3.0 * q4.mass_sq) / q4.mass_sq;
  const double r_e = std::abs(q4.e_q0 - 0.5 * q4.mass_sq) / q4.mass_sq;
  auto g3 = make_grid(3, 40.0, 512);
  const GroundState q3 = solve_ground_state(g3, 1);
  const IdentityReport rep3 = ground_state_report(q3);
  const double dt = now_s() - t0;
  const bool pass = r_grad < 1e-4 && r_pot < 1e-4 && r_e < 1e-4 &&
                    rep3.energy_identity < 1e-4 && rep3.pohozaev < 1e-4 && dt < 10.0;
  return {pass, fmt("d=4: |grad-2m|/m=%.1e |pot-3m|/m=%.1e |E-m/2|/(m/2)=%.1e; "
                    "d=3: energy=%.1e pohozaev=%.1e, %.1fs",
                    r_grad, r_pot, 2.0 * r_e, rep3.energy_identity, rep3.pohozaev, dt)};
}

Outcome c3_sharp_gn() {
  const GroundState& q = q4_small();
  const GnCheck at_q = verify_gn(q.profile, q);
  const double eq = std::abs(at_q.lhs / at_q.rhs - 1.0);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> ua(0.1, 2.0), uw(0.5, 3.0);
  double min_margin = 1.0;
  for (int i = 0; i < 10; ++i) {
    const double a = ua(rng), w = uw(rng);
    const RadialField gf = RadialField::from_real(
        grid4_small(), [a, w](double r) { return a * std::exp(-0.5 * r * r / (w * w)); });
    const GnCheck c = verify_gn(gf, q);
    min_margin = std::min(min_margin, (c.rhs - c.lhs) / c.rhs);
  }
  const bool pass = eq < 1e-4 && min_margin > 0.0;
  return {pass, fmt("lhs/rhs at Q = 1 %+.2e; min gaussian margin %.3f", eq, min_margin)};
}

Outcome c4_spectral_suite() {
  const double t0 = now_s();
  double parseval = 0.0, roundtrip = 0.0, partition = 0.0, unitarity = 0.0, group = 0.0;
  for (int d : {1, 3, 4}) {
    auto g = make_grid(d, 40.0, 512);
    const RadialField f =
        RadialField::from_real(g, [](double r) { return std::exp(-0.5 * r * r); });
    const SpectralField F = transform(f);
    double sp = 0.0;
    for (int i = 0; i < g->size(); ++i) sp += g->freq_weights()[i] * std::norm(F.coeffs[i]);
    const double l2 = l2_norm(f);
    parseval = std::max(parseval, std::abs(sp - l2 * l2) / (l2 * l2));
    roundtrip = std::max(roundtrip, (inverse_transform(F).values - f.values).cwiseAbs().maxCoeff());
    RadialField sum = lp_project_below(f, g->k_min() - 1.0);
    for (int k = g->k_min(); k <= g->k_max() + 1; ++k) sum = sum + lp_project(f, k);
    partition = std::max(partition, (sum.values - f.values).cwiseAbs().maxCoeff());
    for (double s : {0.0, 1.0}) {
      const double n0 = sobolev_norm(F, s);
      unitarity = std::max(unitarity, std::abs(sobolev_norm(half_wave(F, 5.0), s) - n0) / n0);
    }
    const SpectralField a = half_wave(half_wave(F, 2.0), 3.0), b = half_wave(F, 5.0);
    group = std::max(group,
                     (a.coeffs - b.coeffs).cwiseAbs().maxCoeff() / b.coeffs.cwiseAbs().maxCoeff());
  }
  const double dt = now_s() - t0;
  const bool pass = parseval < 1e-8 && roundtrip < 1e-8 && partition < 1e-8 &&
                    unitarity < 1e-10 && group < 1e-10 && dt < 10.0;
  return {pass, fmt("parseval=%.1e roundtrip=%.1e partition=%.1e unitarity=%.1e group=%.1e, %.1fs",
                    parseval, roundtrip, partition, unitarity, group, dt)};
}

Outcome c5_modulation_bound() {
  AnalysisParams p;  // beta = 6
  const ModulationScan s1 = modulation_scan(p, 10000, 12345);
  const ModulationScan s2 = modulation_scan(p, 20000, 54321);
  const double rel = std::abs(s1.min_product - s2.min_product) / s1.min_product;
  const bool pass = s1.min_product >= 0.5 && rel < 0.10;
  return {pass, fmt("min |Phi|<min(|xi-eta|,|eta|)> = %.4f (>= 0.5), doubling change %.2f%%",
                    s1.min_product, 100.0 * rel)};
}

Outcome c6_bilinear_oracle() {
  AnalysisParams p;
  p.beta = 3.0;
  const int shell = -5;  // j = k = -beta-2
  auto g = make_grid(3, 2000.0, 256);
  auto fhat = [shell](double rho) { return lp_phi_k(shell, rho); };
  Eigen::VectorXcd cf(g->size());
  for (int i = 0; i < g->size(); ++i) cf[i] = fhat(g->freq_nodes()[i]);
  const RadialField f = inverse_transform(SpectralField(g, cf));
  auto sym = [&p](double w, double e, double xi) -> Complex {
    const double m = m_ll(w, e, p);
    if (m == 0.0) return Complex(0.0, 0.0);
    return m / Complex(0.0, modulation_phi_from_lengths(xi, w, e, ModulationSpec{+1, +1}));
  };
  const SpectralField impl_hat = transform(bilinear_apply(sym, f, f, BilinearOptions{64, 1}));
  oracles::DenseBilinearOracle oracle{3, sym, fhat, fhat, g->freq_nodes()[g->size() - 1],
                                      2 * g->size(), 128};
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g->size(); i += 3) {
    const Complex want = oracle.eval(g->freq_nodes()[i]);
    num = std::max(num, std::abs(impl_hat.coeffs[i] - want));
    den = std::max(den, std::abs(want));
  }
  const double rel = num / den;
  return {rel < 1e-5, fmt("single-shell (j=k=-5, beta=3) vs dense 2x oracle: rel err %.2e", rel)};
}

Outcome c7_residual_order() {
  auto g = make_grid(3, 40.0, 160);
  const RadialField f0 =
      RadialField::from_real(g, [](double r) { return 0.35 * std::exp(-r * r / (2 * 1.44)); });
  const RadialField z = RadialField::zero(g);
  AnalysisParams p;
  std::vector<double> resid;
  for (double dt : {0.4, 0.2, 0.1}) {
    EvolveOptions eo;
    eo.t_end = 2.0;
    eo.dt = dt;
    eo.stride = 1;
    eo.store_fields = true;
    eo.track_besov = false;
    eo.track_morawetz = false;
    eo.track_scattering = false;
    eo.thresholds.boundary_frac = 1.0;
    const EvolveResult res = evolve(f0, z, Nonlinearity::complex_square(), eo);
    resid.push_back(normal_form_residual(res.trajectory, p).back());
  }
  const double o1 = std::log2(resid[0] / resid[1]);
  const double o2 = std::log2(resid[1] / resid[2]);
  return {o2 >= 3.5, fmt("residuals %.2e -> %.2e -> %.2e; orders %.2f, %.2f (need >= 3.5)",
                         resid[0], resid[1], resid[2], o1, o2)};
}

Outcome c8_conservation() {
  const RunRecord& rec = sweep_runs().at(0.8).record;
  const double drift = rec.e_drift_per_time;
  return {drift < 1e-6 && rec.verdict != "BlewUp",
          fmt("lambda=0.8, N=512, dt=1e-3, T=50: max |E(t)-E(0)|/(|E(0)| t) = %.2e", drift)};
}

Outcome c9_dichotomy_sweep() {
  const GroundState& q = q_dich();
  bool pass = true;
  std::string detail;
  for (double lam : {0.6, 0.8, 0.9}) {
    const RunRecord& rec = sweep_runs().at(lam).record;
    bool ok = rec.verdict != "BlewUp" && rec.resolved;
    double max_mass = 0.0, min_k10 = 1e300;
    for (const auto& row : rec.rows) {
      max_mass = std::max(max_mass, row[rec.column_index("L2sq")]);
      min_k10 = std::min(min_k10, row[rec.column_index("K10")]);
    }
    ok = ok && max_mass < q.mass_sq && min_k10 > -1e-9 * q.mass_sq;
    detail += fmt("%g:%s(mass%.3f,K10>%.1e) ", lam, ok ? "global" : "VIOLATION",
                  max_mass / q.mass_sq, min_k10);
    pass = pass && ok;
  }
  for (double lam : {1.1, 1.2, 1.5}) {
    const RunRecord& rec = sweep_runs().at(lam).record;
    const BlowupReport rep = detect_blowup(rec);
    const bool ok = rec.verdict == "BlewUp" && rec.t_detect < 50.0 &&
                    rep.max_identity_residual < 1e-3;
    detail += fmt("%g:%s(t*=%.2f,conv=%.1e) ", lam, ok ? "blowup" : "VIOLATION", rec.t_detect,
                  rep.max_identity_residual);
    pass = pass && ok;
  }
  sweep_runs();  // ensure the timer is populated even if C8 did not run
  pass = pass && g_sweep_elapsed < 1800.0;
  return {pass, detail + fmt("%.0fs", g_sweep_elapsed)};
}

Outcome c10_morawetz() {
  const Trajectory& traj = sweep_runs().at(0.8).trajectory;
  const MorawetzReport rep = morawetz_track(traj, 10.0, Nonlinearity::quadratic());
  bool windows_finite = !rep.windows.empty();
  std::string wd;
  for (const auto& w : rep.windows) {
    windows_finite = windows_finite && std::isfinite(w[2]);
    wd += fmt("[%g,%g]:%.1f/%.1f ", w[0], w[1], w[2], w[3]);
  }
  const bool pass = rep.max_identity_residual < 1e-3 && std::isfinite(rep.max_abs_m_over_r) &&
                    windows_finite;
  return {pass, fmt("identity residual %.2e (<1e-3); |M|<=cR with c=%.1f; windows vs R+TR^-3/2: %s",
                    rep.max_identity_residual, rep.max_abs_m_over_r, wd.c_str())};
}

Outcome c11_scattering() {
  // Dedicated lambda=0.8 run on a reflection-free domain at desk scale.
  auto g = make_grid(4, 96.0, 512);
  const GroundState q = solve_ground_state(g, 1);
  EvolveOptions eo;
  eo.t_end = 75.0;
  eo.dt = 2e-3;
  eo.stride = 10;
  eo.track_besov = false;
  eo.track_morawetz = false;
  eo.track_scattering = true;
  const EvolveResult res =
      evolve(0.8 * q.profile, RadialField::zero(g), Nonlinearity::quadratic(), eo);
  const auto& e = res.record.scatter_consecutive;
  const auto& om = res.record.scatter_omega_h1;
  const bool monotone = e.size() == 2 && e[1] < e[0];
  const bool below = !e.empty() && e.back() < 1e-3;
  const bool om_decreasing = om.size() == 3 && om[1] < om[0] && om[2] < om[1];
  const bool pass = monotone && below && om_decreasing;

  // informational small-data extraction with the same machinery
  EvolveOptions es = eo;
  es.t_end = 40.0;
  es.dt = 4e-3;
  auto gs_small = make_grid(4, 56.0, 256);
  const GroundState qs = solve_ground_state(gs_small, 1);
  const EvolveResult small =
      evolve(0.05 * qs.profile, RadialField::zero(gs_small), Nonlinearity::quadratic(), es);
  const auto& es_c = small.record.scatter_consecutive;
  std::fprintf(stderr,
               "  [info] small-data (0.05Q, T=40) cauchy: %.2e -> %.2e, verdict=%s\n",
               es_c.empty() ? -1.0 : es_c[0], es_c.empty() ? -1.0 : es_c.back(),
               small.record.verdict.c_str());

  return {pass,
          fmt("lambda=0.8 T=75: cauchy %.3e -> %.3e (monotone=%d, <1e-3=%d); "
              "omegaH1 %.3e -> %.3e -> %.3e (decreasing=%d)",
              e.empty() ? -1.0 : e[0], e.empty() ? -1.0 : e.back(), int(monotone), int(below),
              om.empty() ? -1.0 : om[0], om.size() > 1 ? om[1] : -1.0,
              om.size() > 2 ? om[2] : -1.0, int(om_decreasing))};
}

Outcome c12_determinism() {
  const char* bin = std::getenv("KGLAB_BIN");
  const std::string cfg_text =
      "[grid]\nd = 4\nr_max = 24\nn = 96\n"
      "[initial]\nfamily = lambda_q\n"
      "[evolution]\nt_end = 2.0\ndt = 0.01\nstride = 5\n"
      "[sweep]\nlambdas = 0.8, 1.2\n"
      "[thresholds]\nmorawetz_r = 6\n";
  auto read_all = [](const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  if (bin != nullptr) {
    const std::string cfg_path = "/tmp/kg_det_sweep.cfg";
    std::ofstream(cfg_path) << cfg_text;
    for (const char* out : {"/tmp/kg_det_a", "/tmp/kg_det_b"}) {
      const std::string cmd = std::string(bin) + " --config " + cfg_path + " --out " + out +
                              " sweep > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "kglab sweep invocation failed"};
    }
    bool same = true;
    for (const char* stem : {"run_lambda_0.8.csv", "run_lambda_1.2.csv"}) {
      const std::string a = read_all(std::string("/tmp/kg_det_a/") + stem);
      const std::string b = read_all(std::string("/tmp/kg_det_b/") + stem);
      same = same && !a.empty() && a == b;
    }
    return {same, same ? "two kglab sweep executions produced identical CSV bytes"
                       : "CSV bytes differ between executions"};
  }
  // fallback: drive the library twice
  const ExperimentConfig cfg = ExperimentConfig::from_string(cfg_text);
  auto run_once = [&](const std::string& path) {
    const GridPtr g = make_grid(cfg.d, cfg.r_max, cfg.n);
    const GroundState q = solve_ground_state(g, 1, cfg.groundstate_options());
    std::string all;
    for (double lam : cfg.lambdas) {
      EvolveResult res =
          evolve(lam * q.profile, RadialField::zero(g), cfg.make_nonlinearity(),
                 cfg.evolve_options());
      write_csv(res.record, path);
      all += read_all(path);
    }
    return all;
  };
  const std::string a = run_once("/tmp/kg_det_lib_a.csv");
  const std::string b = run_once("/tmp/kg_det_lib_b.csv");
  return {!a.empty() && a == b, "library-level double execution compared"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1  ground-state d=1 closed form", c1_ground_state_1d},
      {"C2  ground-state identities d=4/d=3", c2_ground_state_identities},
      {"C3  sharp Gagliardo-Nirenberg at Q", c3_sharp_gn},
      {"C4  spectral suite", c4_spectral_suite},
      {"C5  modulation lower bound", c5_modulation_bound},
      {"C6  bilinear dense oracle", c6_bilinear_oracle},
      {"C7  normal-form residual order", c7_residual_order},
      {"C8  energy conservation", c8_conservation},
      {"C9  dichotomy sweep", c9_dichotomy_sweep},
      {"C10 morawetz identity and windows", c10_morawetz},
      {"C11 scattering extraction", c11_scattering},
      {"C12 determinism", c12_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i + 1))) continue;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
