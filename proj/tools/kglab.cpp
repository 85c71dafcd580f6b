// kglab: command line laboratory for the radial quadratic Klein-Gordon
// dichotomy experiments. Subcommands: ground-state, classify, evolve, sweep,
// verify, norms. Exit codes: 0 ok, 2 verification failure, 3 convergence
// failure, 4 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "kg/checks.hpp"
#include "kg/config.hpp"
#include "kg/evolution.hpp"
#include "kg/record.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitConfig = 4;

struct GsKey {
  int d;
  int p;
  int n;
  double r_max;
  double tol;
  bool operator<(const GsKey& o) const {
    return std::tie(d, p, n, r_max, tol) < std::tie(o.d, o.p, o.n, o.r_max, o.tol);
  }
};

std::map<GsKey, kg::GroundState>& gs_cache() {
  static std::map<GsKey, kg::GroundState> cache;
  return cache;
}

const kg::GroundState& cached_ground_state(const kg::GridPtr& grid,
                                           const kg::ExperimentConfig& cfg) {
  const GsKey key{grid->dimension(), cfg.gs_p, grid->size(), grid->r_max(), cfg.gs_tol};
  auto it = gs_cache().find(key);
  if (it == gs_cache().end())
    it = gs_cache()
             .emplace(key, kg::solve_ground_state(grid, cfg.gs_p, cfg.groundstate_options()))
             .first;
  return it->second;
}

kg::RadialField initial_u0(const kg::GridPtr& grid, const kg::ExperimentConfig& cfg,
                           double lambda_override = std::nan("")) {
  if (cfg.family == "lambda_q") {
    const double lam = std::isnan(lambda_override) ? cfg.lambda : lambda_override;
    return lam * cached_ground_state(grid, cfg).profile;
  }
  if (cfg.family == "gaussian") {
    const double a = cfg.amplitude, w = cfg.width;
    return kg::RadialField::from_real(
        grid, [a, w](double r) { return a * std::exp(-0.5 * r * r / (w * w)); });
  }
  // family == "file": two-column table (r, value), linearly resampled
  std::ifstream is(cfg.initial_file);
  if (!is) throw kg::ParameterError("cannot open initial data file: " + cfg.initial_file);
  std::vector<double> rs, vs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
      continue;
    double r, v;
    if (std::sscanf(line.c_str(), "%lf,%lf", &r, &v) == 2 ||
        std::sscanf(line.c_str(), "%lf %lf", &r, &v) == 2) {
      rs.push_back(r);
      vs.push_back(v);
    }
  }
  if (rs.size() < 2) throw kg::ParameterError("initial data file has fewer than 2 samples");
  return kg::RadialField::from_real(grid, [&](double r) {
    if (r <= rs.front()) return vs.front();
    if (r >= rs.back()) return 0.0;
    const auto it = std::upper_bound(rs.begin(), rs.end(), r);
    const size_t i = it - rs.begin();
    const double t = (r - rs[i - 1]) / (rs[i] - rs[i - 1]);
    return vs[i - 1] + t * (vs[i] - vs[i - 1]);
  });
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

ordered_json verdict_json(const kg::Verdict& v) {
  ordered_json j;
  j["region"] = kg::region_name(v.region);
  j["E"] = v.energy;
  j["E_threshold"] = v.e_threshold;
  j["mass_ratio"] = v.mass_ratio;
  j["K10"] = v.k10;
  j["K_virial"] = v.k_virial;
  j["boundary_flag"] = v.boundary_flag;
  return j;
}

int cmd_ground_state(const kg::ExperimentConfig& cfg) {
  const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
  const kg::GroundState& gs = cached_ground_state(grid, cfg);
  const kg::IdentityReport rep = kg::ground_state_report(gs);

  ensure_dir(cfg.out_dir);
  ordered_json j;
  j["schema_version"] = 1;
  j["d"] = gs.d;
  j["p"] = gs.p;
  j["b_star"] = gs.b_star;
  j["norms"]["massSq"] = gs.mass_sq;
  j["norms"]["gradSq"] = gs.grad_sq;
  j["norms"]["potInt"] = gs.pot_int;
  j["J_Q"] = gs.j_q;
  j["E_Q0"] = gs.e_q0;
  j["tail_match_r"] = gs.tail_match_r;
  j["residuals"]["ode"] = gs.ode_residual;
  j["residuals"]["energy_identity"] = rep.energy_identity;
  j["residuals"]["pohozaev"] = rep.pohozaev;
  j["residuals"]["j_matches_energy"] = rep.j_matches_energy;
  if (rep.gn_equality) j["residuals"]["gn_equality"] = *rep.gn_equality;
  if (rep.e_half_mass) j["residuals"]["e_half_mass"] = *rep.e_half_mass;
  const std::string jpath = cfg.out_dir + "/ground_state.json";
  std::ofstream(jpath) << j.dump(2) << "\n";

  const std::string cpath = cfg.out_dir + "/ground_state_profile.csv";
  std::ofstream cs(cpath, std::ios::binary);
  cs << "r,Q\n";
  for (int i = 0; i < grid->size(); ++i)
    cs << kg::format_double(grid->nodes()[i]) << ","
       << kg::format_double(gs.profile.values[i].real()) << "\n";

  std::cout << j.dump(2) << "\n";
  std::cerr << "wrote " << jpath << " and " << cpath << "\n";
  return kExitOk;
}

int cmd_classify(const kg::ExperimentConfig& cfg) {
  if (cfg.d != 4) throw kg::ParameterError("classify requires grid.d = 4");
  const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
  const kg::GroundState& gs = cached_ground_state(grid, cfg);
  const kg::RadialField u0 = initial_u0(grid, cfg);
  const kg::RadialField u1 = kg::RadialField::zero(grid);
  const kg::Verdict v = kg::classify(u0, u1, gs, cfg.thresholds.mass_band);
  const ordered_json j = verdict_json(v);
  ensure_dir(cfg.out_dir);
  std::ofstream(cfg.out_dir + "/classify.json") << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

kg::EvolveResult run_one(const kg::ExperimentConfig& cfg, double lambda, bool quiet) {
  const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
  const kg::RadialField u0 = initial_u0(grid, cfg, lambda);
  const kg::RadialField u1 = kg::RadialField::zero(grid);
  kg::EvolveResult res = kg::evolve(u0, u1, cfg.make_nonlinearity(), cfg.evolve_options());
  res.record.config.merge(std::map<std::string, std::string>(cfg.flat()));
  if (!std::isnan(lambda)) res.record.config["initial.lambda"] = kg::format_double(lambda);
  if (!quiet)
    std::cerr << "run lambda=" << (std::isnan(lambda) ? cfg.lambda : lambda)
              << " verdict=" << res.record.verdict << "\n";
  return res;
}

void write_run(const kg::ExperimentConfig& cfg, const kg::EvolveResult& res,
               const std::string& stem) {
  ensure_dir(cfg.out_dir);
  const std::string csv = cfg.out_dir + "/" + stem + ".csv";
  kg::write_csv(res.record, csv);
  std::map<std::string, std::string> files{{"series_csv", csv}};
  if (cfg.emit_dat) {
    kg::write_dat(res.record, cfg.out_dir + "/" + stem + ".dat");
    files["series_dat"] = cfg.out_dir + "/" + stem + ".dat";
  }
  if (cfg.store_fields && !res.trajectory.empty()) {
    kg::write_trajectory(res.trajectory, cfg.out_dir + "/" + stem + ".traj");
    files["trajectory"] = cfg.out_dir + "/" + stem + ".traj";
  }
  if (res.u_plus.size() > 0) {
    const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
    const std::string upath = cfg.out_dir + "/" + stem + "_u_plus.csv";
    std::ofstream us(upath, std::ios::binary);
    us << "rho,re,im\n";
    for (int i = 0; i < grid->size(); ++i)
      us << kg::format_double(grid->freq_nodes()[i]) << ","
         << kg::format_double(res.u_plus[i].real()) << ","
         << kg::format_double(res.u_plus[i].imag()) << "\n";
    files["u_plus"] = upath;
  }
  kg::write_manifest(res.record, cfg.out_dir + "/" + stem + ".json", files);
}

int cmd_evolve(const kg::ExperimentConfig& cfg) {
  const kg::EvolveResult res = run_one(cfg, std::nan(""), false);
  write_run(cfg, res, "run");
  std::cout << "verdict: " << res.record.verdict << "\n";
  return kExitOk;
}

int cmd_sweep(const kg::ExperimentConfig& cfg) {
  if (cfg.family != "lambda_q")
    throw kg::ParameterError("sweep requires initial.family = lambda_q");
  {
    const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
    cached_ground_state(grid, cfg);  // warm the cache before spawning children
  }
  std::vector<kg::EvolveResult> results(cfg.lambdas.size());
  const int threads = std::max(1, cfg.threads);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cfg.lambdas.size()) return;
      results[i] = run_one(cfg, cfg.lambdas[i], true);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::future<void>> futs;
    for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }

  ordered_json summary;
  summary["schema_version"] = 1;
  summary["config"] = cfg.flat();
  double max_global = -1.0, min_blowup = -1.0;
  for (size_t i = 0; i < cfg.lambdas.size(); ++i) {
    const auto& rec = results[i].record;
    char stem[64];
    std::snprintf(stem, sizeof(stem), "run_lambda_%g", cfg.lambdas[i]);
    write_run(cfg, results[i], stem);
    ordered_json row;
    row["lambda"] = cfg.lambdas[i];
    row["verdict"] = rec.verdict;
    row["t_detect"] = rec.t_detect;
    row["resolved"] = rec.resolved;
    row["e_drift_per_time"] = rec.e_drift_per_time;
    if (cfg.d == 4 && cfg.nonlinearity == "quadratic") {
      const kg::GridPtr grid = kg::make_grid(cfg.d, cfg.r_max, cfg.n);
      const kg::Verdict cls = kg::classify(cfg.lambdas[i] * cached_ground_state(grid, cfg).profile,
                                           kg::RadialField::zero(grid),
                                           cached_ground_state(grid, cfg),
                                           cfg.thresholds.mass_band);
      row["classifier"] = kg::region_name(cls.region);
    }
    summary["runs"].push_back(row);
    std::cerr << "lambda=" << cfg.lambdas[i] << " -> " << rec.verdict << "\n";
    if (rec.verdict == "BlewUp") {
      if (min_blowup < 0 || cfg.lambdas[i] < min_blowup) min_blowup = cfg.lambdas[i];
    } else if (cfg.lambdas[i] > max_global) {
      max_global = cfg.lambdas[i];
    }
  }
  summary["threshold_interval"] = {max_global, min_blowup};
  summary["monotone_in_lambda"] = min_blowup < 0 || max_global < min_blowup;
  ensure_dir(cfg.out_dir);
  std::ofstream(cfg.out_dir + "/sweep.json") << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const kg::ExperimentConfig& cfg, const std::vector<std::string>& only) {
  const auto results = kg::run_verification(cfg, only);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %-22s measured=%-13.6g bound=%-10.4g %s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.tolerance, r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitVerify;
}

int cmd_norms(const kg::ExperimentConfig& cfg, const std::string& traj_path,
              const std::vector<std::string>& norm_specs) {
  const kg::Trajectory traj = kg::read_trajectory(traj_path);
  const int d = traj.grid->dimension();
  const double k = cfg.analysis.kappa, del = cfg.analysis.delta;
  std::vector<std::pair<std::string, kg::SpaceTimeNormSpec>> specs;
  specs.push_back({"LinfH1equiv", {0.0, 0.5, 0.0, 1.0}});
  if (d == 3) {
    specs.push_back({"S_strichartz", {0.5, 0.3 - k, 0.4 - 3 * k, 0.7 + k}});
    specs.push_back({"Z", {0.0, 0.0, -1.25, -0.75}});
  } else if (d == 4) {
    specs.push_back({"S_strichartz", {0.5, 5.0 / 14 - k, 3.0 / 7 - 4 * k, 11.0 / 14 + k}});
    specs.push_back({"Z", {0.0, 0.0, -0.5, -4.0 / 3 + del}});
  }
  for (const auto& s : norm_specs) {
    kg::SpaceTimeNormSpec sp;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &sp.q_inv, &sp.r_inv, &sp.s0, &sp.s1) != 4)
      throw kg::ParameterError("norm spec must be 'q_inv,r_inv,s0,s1', got: " + s);
    specs.push_back({"custom(" + s + ")", sp});
  }

  std::vector<kg::RadialField> fields;
  fields.reserve(traj.size());
  for (size_t i = 0; i < traj.size(); ++i) fields.push_back(traj.field_at(i));
  const double dt = traj.size() > 1 ? traj.times[1] - traj.times[0] : 1.0;

  ordered_json j;
  j["trajectory"] = traj_path;
  j["samples"] = traj.size();
  j["dyadic_window"] = {traj.grid->k_min(), traj.grid->k_max()};
  for (const auto& [name, sp] : specs) {
    const double v = kg::spacetime_norm(fields, dt, sp);
    j["norms"][name] = v;
    std::printf("%-24s %.10g\n", name.c_str(), v);
  }
  ensure_dir(cfg.out_dir);
  std::ofstream(cfg.out_dir + "/norms.json") << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial quadratic Klein-Gordon laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, traj_path;
  unsigned long long seed = 0;
  int threads = 0;
  std::vector<std::string> only, norm_specs;

  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--threads", threads, "worker threads for sweeps");

  auto* sc_gs = app.add_subcommand("ground-state", "solve Q and report identities");
  auto* sc_cl = app.add_subcommand("classify", "classify initial data against the threshold");
  auto* sc_ev = app.add_subcommand("evolve", "run one evolution");
  auto* sc_sw = app.add_subcommand("sweep", "run the lambda sweep");
  auto* sc_vf = app.add_subcommand("verify", "run identity/property checks");
  sc_vf->add_option("--only", only, "restrict to the named checks")->delimiter(',');
  auto* sc_no = app.add_subcommand("norms", "evaluate space-time norms on a stored trajectory");
  sc_no->add_option("--traj", traj_path, "trajectory file (.traj)")->required();
  sc_no->add_option("--norm", norm_specs, "extra norm spec 'q_inv,r_inv,s0,s1'");

  CLI11_PARSE(app, argc, argv);

  try {
    kg::ExperimentConfig cfg;
    try {
      if (!config_path.empty()) cfg = kg::ExperimentConfig::from_file(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (!seed_opt->empty()) cfg.seed = seed;
      if (threads > 0) cfg.threads = threads;
      cfg.validate();
    } catch (const kg::ParameterError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }

    if (sc_gs->parsed()) return cmd_ground_state(cfg);
    if (sc_cl->parsed()) return cmd_classify(cfg);
    if (sc_ev->parsed()) return cmd_evolve(cfg);
    if (sc_sw->parsed()) return cmd_sweep(cfg);
    if (sc_vf->parsed()) return cmd_verify(cfg, only);
    if (sc_no->parsed()) return cmd_norms(cfg, traj_path, norm_specs);
  } catch (const kg::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const kg::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const kg::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
