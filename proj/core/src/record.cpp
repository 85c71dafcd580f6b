#include "kg/record.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace kg {

int RunRecord::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw ParameterError("record has no column named " + name);
}

std::vector<double> RunRecord::column(const std::string& name) const {
  const int idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(idx));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_table(const RunRecord& record, const std::string& path, char sep, bool header) {
  std::ofstream os(path, std::ios::binary);  // binary: no platform newline translation
  if (!os) throw ParameterError("cannot open for writing: " + path);
  if (header) {
    for (size_t i = 0; i < record.columns.size(); ++i) {
      if (i) os << sep;
      os << record.columns[i];
    }
    os << "\n";
  }
  for (const auto& row : record.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << sep;
      os << format_double(row[i]);
    }
    os << "\n";
  }
}

}  // namespace

void write_csv(const RunRecord& record, const std::string& path) {
  write_table(record, path, ',', true);
}

void write_dat(const RunRecord& record, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot open for writing: " + path);
  os << "#";
  for (const auto& c : record.columns) os << " " << c;
  os << "\n";
  os.close();
  std::ofstream app(path, std::ios::binary | std::ios::app);
  for (const auto& row : record.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) app << " ";
      app << format_double(row[i]);
    }
    app << "\n";
  }
}

void write_manifest(const RunRecord& record, const std::string& path,
                    const std::map<std::string, std::string>& extra_files) {
  nlohmann::ordered_json j;
  j["schema_version"] = RunRecord::kSchemaVersion;
  j["config"] = record.config;
  j["verdict"] = record.verdict;
  j["t_detect"] = record.t_detect;
  j["resolved"] = record.resolved;
  j["warnings"] = record.warnings;
  j["e_drift_per_time"] = record.e_drift_per_time;
  j["columns"] = record.columns;
  j["samples"] = record.rows.size();
  if (!record.scatter_times.empty()) {
    j["scattering"]["times"] = record.scatter_times;
    j["scattering"]["cauchy_consecutive"] = record.scatter_consecutive;
    j["scattering"]["omega_h1"] = record.scatter_omega_h1;
  }
  if (!record.cube_windows.empty()) {
    auto& w = j["cube_windows"];
    for (const auto& row : record.cube_windows)
      w.push_back({row[0], row[1], row[2], row[3]});
  }
  for (const auto& [k, v] : extra_files) j["files"][k] = v;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
}

namespace {
constexpr char kTrajMagic[8] = {'K', 'G', 'T', 'R', 'A', 'J', '0', '1'};
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot open for writing: " + path);
  os.write(kTrajMagic, 8);
  const int32_t d = traj.grid->dimension();
  const int32_t n = traj.grid->size();
  const double rmax = traj.grid->r_max();
  const int32_t model = static_cast<int32_t>(traj.model);
  const int64_t count = static_cast<int64_t>(traj.size());
  os.write(reinterpret_cast<const char*>(&d), 4);
  os.write(reinterpret_cast<const char*>(&n), 4);
  os.write(reinterpret_cast<const char*>(&rmax), 8);
  os.write(reinterpret_cast<const char*>(&model), 4);
  os.write(reinterpret_cast<const char*>(&count), 8);
  for (size_t i = 0; i < traj.size(); ++i) {
    os.write(reinterpret_cast<const char*>(&traj.times[i]), 8);
    os.write(reinterpret_cast<const char*>(traj.states[i].data()), n * 16);
  }
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParameterError("cannot open trajectory file: " + path);
  char magic[8];
  is.read(magic, 8);
  if (std::memcmp(magic, kTrajMagic, 8) != 0) throw ParameterError("not a trajectory file: " + path);
  int32_t d = 0, n = 0, model = 0;
  double rmax = 0;
  int64_t count = 0;
  is.read(reinterpret_cast<char*>(&d), 4);
  is.read(reinterpret_cast<char*>(&n), 4);
  is.read(reinterpret_cast<char*>(&rmax), 8);
  is.read(reinterpret_cast<char*>(&model), 4);
  is.read(reinterpret_cast<char*>(&count), 8);
  Trajectory traj;
  traj.grid = make_grid(d, rmax, n);
  traj.model = static_cast<TrajModel>(model);
  traj.times.resize(count);
  traj.states.resize(count);
  for (int64_t i = 0; i < count; ++i) {
    is.read(reinterpret_cast<char*>(&traj.times[i]), 8);
    traj.states[i].resize(n);
    is.read(reinterpret_cast<char*>(traj.states[i].data()), n * 16);
  }
  if (!is) throw ParameterError("truncated trajectory file: " + path);
  return traj;
}

}  // namespace kg
