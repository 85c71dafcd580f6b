#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kg/config.hpp"
#include "kg/record.hpp"

using namespace kg;
namespace fs = std::filesystem;

namespace {
const char* kSample = R"(
# sample experiment
[grid]
d = 4
r_max = 24
n = 96

[analysis]
beta = 6
kappa = 0.004

[nonlinearity]
kind = quadratic

[initial]
family = lambda_q
lambda = 0.8

[evolution]
t_end = 2.0
dt = 0.01
stride = 5
store_fields = true

[sweep]
lambdas = 0.8, 1.2

[thresholds]
morawetz_r = 6
blowup_factor = 1000

[output]
dir = out_test
)";
}

TEST_CASE("config parses sections, values, and lists") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(kSample);
  CHECK(cfg.d == 4);
  CHECK(cfg.r_max == 24.0);
  CHECK(cfg.n == 96);
  CHECK(cfg.analysis.beta == 6.0);
  CHECK(cfg.analysis.kappa == 0.004);
  CHECK(cfg.nonlinearity == "quadratic");
  CHECK(cfg.family == "lambda_q");
  CHECK(cfg.lambda == 0.8);
  CHECK(cfg.t_end == 2.0);
  CHECK(cfg.stride == 5);
  CHECK(cfg.store_fields);
  REQUIRE(cfg.lambdas.size() == 2);
  CHECK(cfg.lambdas[1] == 1.2);
  CHECK(cfg.thresholds.morawetz_r == 6.0);
  CHECK(cfg.out_dir == "out_test");
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(ExperimentConfig::from_string("[grid]\nd = 4\nbogus = 1\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[grid]\nd = five\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[grid]\nd = 2\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[evolution]\ndt = -0.1\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[sweep]\nlambdas =\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[nonlinearity]\nkind = cubic\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[initial]\nfamily = file\n"), ParameterError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("no_equals_sign\n"), ParameterError);
}

TEST_CASE("flat snapshot round-trips the interesting fields") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(kSample);
  const auto m = cfg.flat();
  CHECK(m.at("grid.d") == "4");
  CHECK(m.at("initial.lambda") == "0.80000000000000004");
  CHECK(m.at("sweep.lambdas") == "0.80000000000000004,1.2");
}

TEST_CASE("record column access and errors") {
  RunRecord rec;
  rec.columns = {"t", "E"};
  rec.rows = {{0.0, 1.0}, {0.1, 1.5}};
  CHECK(rec.column("E")[1] == 1.5);
  CHECK_THROWS_AS(rec.column("missing"), ParameterError);
}

TEST_CASE("csv writing is byte-deterministic") {
  RunRecord rec;
  rec.columns = {"t", "v"};
  for (int i = 0; i < 50; ++i)
    rec.rows.push_back({i * 0.1, std::sin(i * 0.7) * 1e-7});
  const std::string p1 = "/tmp/kg_det_a.csv", p2 = "/tmp/kg_det_b.csv";
  write_csv(rec, p1);
  write_csv(rec, p2);
  std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().substr(0, 4) == "t,v\n");
}

TEST_CASE("trajectory files round trip") {
  auto g = make_grid(3, 20.0, 64);
  Trajectory traj;
  traj.grid = g;
  traj.model = TrajModel::ComplexSquare;
  for (int i = 0; i < 5; ++i) {
    traj.times.push_back(0.25 * i);
    Eigen::VectorXcd c(64);
    for (int j = 0; j < 64; ++j) c[j] = Complex(std::sin(i + j), std::cos(2 * i - j));
    traj.states.push_back(std::move(c));
  }
  const std::string path = "/tmp/kg_traj_test.traj";
  write_trajectory(traj, path);
  const Trajectory back = read_trajectory(path);
  CHECK(back.grid->dimension() == 3);
  CHECK(back.grid->size() == 64);
  CHECK(back.model == TrajModel::ComplexSquare);
  REQUIRE(back.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(back.times[i] == traj.times[i]);
    CHECK((back.states[i] - traj.states[i]).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(read_trajectory("/tmp/does_not_exist.traj"), ParameterError);
}

TEST_CASE("manifest embeds config and verdict") {
  RunRecord rec;
  rec.columns = {"t"};
  rec.rows = {{0.0}};
  rec.verdict = "Scattered";
  rec.config["grid.d"] = "4";
  const std::string path = "/tmp/kg_manifest_test.json";
  write_manifest(rec, path);
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().find("\"Scattered\"") != std::string::npos);
  CHECK(ss.str().find("\"grid.d\"") != std::string::npos);
  CHECK(ss.str().find("\"schema_version\"") != std::string::npos);
}

TEST_CASE("format_double is stable shortest round trip") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1e-300)) == 1e-300);
}
