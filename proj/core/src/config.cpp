#include "kg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kg/record.hpp"

namespace kg {
namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ParameterError("config: boolean expected for " + key + ", got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config: number expected for " + key + ", got '" + v + "'");
  }
}

long parse_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config: integer expected for " + key + ", got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, key));
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParameterError("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return from_string(ss.str());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParameterError("config: bad section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;

    if (full == "grid.d") cfg.d = static_cast<int>(parse_int(val, full));
    else if (full == "grid.r_max") cfg.r_max = parse_double(val, full);
    else if (full == "grid.n") cfg.n = static_cast<int>(parse_int(val, full));
    else if (full == "analysis.beta") cfg.analysis.beta = parse_double(val, full);
    else if (full == "analysis.kappa") cfg.analysis.kappa = parse_double(val, full);
    else if (full == "analysis.epsilon") cfg.analysis.epsilon = parse_double(val, full);
    else if (full == "analysis.delta") cfg.analysis.delta = parse_double(val, full);
    else if (full == "analysis.angle_nodes") cfg.angle_nodes = static_cast<int>(parse_int(val, full));
    else if (full == "nonlinearity.kind") cfg.nonlinearity = val;
    else if (full == "nonlinearity.p") cfg.power_p = static_cast<int>(parse_int(val, full));
    else if (full == "groundstate.p") cfg.gs_p = static_cast<int>(parse_int(val, full));
    else if (full == "groundstate.tol") cfg.gs_tol = parse_double(val, full);
    else if (full == "groundstate.b_lo") cfg.gs_b_lo = parse_double(val, full);
    else if (full == "groundstate.b_hi") cfg.gs_b_hi = parse_double(val, full);
    else if (full == "initial.family") cfg.family = val;
    else if (full == "initial.lambda") cfg.lambda = parse_double(val, full);
    else if (full == "initial.amplitude") cfg.amplitude = parse_double(val, full);
    else if (full == "initial.width") cfg.width = parse_double(val, full);
    else if (full == "initial.file") cfg.initial_file = val;
    else if (full == "evolution.t_end") cfg.t_end = parse_double(val, full);
    else if (full == "evolution.dt") cfg.dt = parse_double(val, full);
    else if (full == "evolution.stride") cfg.stride = static_cast<int>(parse_int(val, full));
    else if (full == "evolution.store_fields") cfg.store_fields = parse_bool(val, full);
    else if (full == "evolution.track_besov") cfg.track_besov = parse_bool(val, full);
    else if (full == "evolution.track_morawetz") cfg.track_morawetz = parse_bool(val, full);
    else if (full == "evolution.track_scattering") cfg.track_scattering = parse_bool(val, full);
    else if (full == "sweep.lambdas") cfg.lambdas = parse_list(val, full);
    else if (full == "thresholds.blowup_factor") cfg.thresholds.blowup_factor = parse_double(val, full);
    else if (full == "thresholds.scatter_cauchy") cfg.thresholds.scatter_cauchy = parse_double(val, full);
    else if (full == "thresholds.eps1") cfg.thresholds.eps1 = parse_double(val, full);
    else if (full == "thresholds.tau1") cfg.thresholds.tau1 = parse_double(val, full);
    else if (full == "thresholds.morawetz_r") cfg.thresholds.morawetz_r = parse_double(val, full);
    else if (full == "thresholds.boundary_frac") cfg.thresholds.boundary_frac = parse_double(val, full);
    else if (full == "thresholds.mass_band") cfg.thresholds.mass_band = parse_double(val, full);
    else if (full == "output.dir") cfg.out_dir = val;
    else if (full == "output.emit_dat") cfg.emit_dat = parse_bool(val, full);
    else if (full == "run.seed") cfg.seed = static_cast<unsigned long long>(parse_int(val, full));
    else if (full == "run.threads") cfg.threads = static_cast<int>(parse_int(val, full));
    else throw ParameterError("config: unknown key '" + full + "' at line " + std::to_string(lineno));
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (d != 1 && d != 3 && d != 4) throw ParameterError("config: grid.d must be 1, 3, or 4");
  if (!(r_max > 0.0)) throw ParameterError("config: grid.r_max must be positive");
  if (n < 16) throw ParameterError("config: grid.n must be >= 16");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw ParameterError("config: evolution times must be positive");
  if (stride < 1) throw ParameterError("config: evolution.stride must be >= 1");
  if (lambdas.empty()) throw ParameterError("config: sweep.lambdas must be non-empty");
  if (!(gs_tol > 0.0)) throw ParameterError("config: groundstate.tol must be positive");
  if (gs_p < 1) throw ParameterError("config: groundstate.p must be >= 1");
  if (!(thresholds.blowup_factor > 1.0)) throw ParameterError("config: blowup_factor must be > 1");
  if (!(thresholds.scatter_cauchy > 0.0) || !(thresholds.eps1 > 0.0) || !(thresholds.tau1 > 0.0) ||
      !(thresholds.morawetz_r > 0.0) || !(thresholds.boundary_frac > 0.0) ||
      !(thresholds.mass_band > 0.0))
    throw ParameterError("config: thresholds must be positive");
  if (nonlinearity != "quadratic" && nonlinearity != "phi4" && nonlinearity != "power" &&
      nonlinearity != "usquare" && nonlinearity != "none")
    throw ParameterError("config: unknown nonlinearity kind '" + nonlinearity + "'");
  if (nonlinearity == "power" && power_p < 1) throw ParameterError("config: nonlinearity.p must be >= 1");
  if (family != "lambda_q" && family != "gaussian" && family != "file")
    throw ParameterError("config: unknown initial family '" + family + "'");
  if (family == "file" && initial_file.empty())
    throw ParameterError("config: initial.file required for family = file");
  if (threads < 1) throw ParameterError("config: run.threads must be >= 1");
}

Nonlinearity ExperimentConfig::make_nonlinearity() const {
  if (nonlinearity == "quadratic") return Nonlinearity::quadratic();
  if (nonlinearity == "phi4") return Nonlinearity::phi4();
  if (nonlinearity == "power") return Nonlinearity::power(power_p);
  if (nonlinearity == "usquare") return Nonlinearity::complex_square();
  return Nonlinearity::none();
}

EvolveOptions ExperimentConfig::evolve_options() const {
  EvolveOptions opts;
  opts.t_end = t_end;
  opts.dt = dt;
  opts.stride = stride;
  opts.store_fields = store_fields;
  opts.track_besov = track_besov;
  opts.track_morawetz = track_morawetz;
  opts.track_scattering = track_scattering;
  opts.thresholds = thresholds;
  opts.analysis = analysis;
  opts.bilinear.angle_nodes = angle_nodes;
  return opts;
}

GroundStateOptions ExperimentConfig::groundstate_options() const {
  GroundStateOptions o;
  o.tol = gs_tol;
  o.b_lo = gs_b_lo;
  o.b_hi = gs_b_hi;
  return o;
}

std::map<std::string, std::string> ExperimentConfig::flat() const {
  std::map<std::string, std::string> m;
  m["grid.d"] = std::to_string(d);
  m["grid.r_max"] = format_double(r_max);
  m["grid.n"] = std::to_string(n);
  m["analysis.beta"] = format_double(analysis.beta);
  m["analysis.kappa"] = format_double(analysis.kappa);
  m["analysis.epsilon"] = format_double(analysis.epsilon);
  m["analysis.delta"] = format_double(analysis.delta);
  m["analysis.angle_nodes"] = std::to_string(angle_nodes);
  m["nonlinearity.kind"] = nonlinearity;
  m["nonlinearity.p"] = std::to_string(power_p);
  m["groundstate.p"] = std::to_string(gs_p);
  m["groundstate.tol"] = format_double(gs_tol);
  m["groundstate.b_lo"] = format_double(gs_b_lo);
  m["groundstate.b_hi"] = format_double(gs_b_hi);
  m["initial.family"] = family;
  m["initial.lambda"] = format_double(lambda);
  m["initial.amplitude"] = format_double(amplitude);
  m["initial.width"] = format_double(width);
  if (!initial_file.empty()) m["initial.file"] = initial_file;
  m["evolution.t_end"] = format_double(t_end);
  m["evolution.dt"] = format_double(dt);
  m["evolution.stride"] = std::to_string(stride);
  m["evolution.store_fields"] = store_fields ? "1" : "0";
  m["evolution.track_besov"] = track_besov ? "1" : "0";
  m["evolution.track_morawetz"] = track_morawetz ? "1" : "0";
  m["evolution.track_scattering"] = track_scattering ? "1" : "0";
  {
    std::string ls;
    for (size_t i = 0; i < lambdas.size(); ++i) {
      if (i) ls += ",";
      ls += format_double(lambdas[i]);
    }
    m["sweep.lambdas"] = ls;
  }
  m["thresholds.blowup_factor"] = format_double(thresholds.blowup_factor);
  m["thresholds.scatter_cauchy"] = format_double(thresholds.scatter_cauchy);
  m["thresholds.eps1"] = format_double(thresholds.eps1);
  m["thresholds.tau1"] = format_double(thresholds.tau1);
  m["thresholds.morawetz_r"] = format_double(thresholds.morawetz_r);
  m["thresholds.boundary_frac"] = format_double(thresholds.boundary_frac);
  m["thresholds.mass_band"] = format_double(thresholds.mass_band);
  m["output.dir"] = out_dir;
  m["output.emit_dat"] = emit_dat ? "1" : "0";
  m["run.seed"] = std::to_string(seed);
  m["run.threads"] = std::to_string(threads);
  return m;
}

}  // namespace kg
