#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kg/trajectory.hpp"

namespace kg {

// Persisted diagnostics of one evolution run. Scalar series go to CSV with a
// declared schema; everything else lands in the JSON manifest.
struct RunRecord {
  static constexpr int kSchemaVersion = 1;

  std::map<std::string, std::string> config;  // flat snapshot, reproducibility
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string verdict = "Undetermined";  // Scattered | BlewUp | Undetermined
  double t_detect = -1.0;
  bool resolved = true;
  std::vector<std::string> warnings;

  double e_drift_per_time = 0.0;
  std::vector<double> scatter_times;
  std::vector<double> scatter_consecutive;
  std::vector<double> scatter_omega_h1;
  std::vector<std::array<double, 4>> cube_windows;  // {T, 2T, integral, R + T R^{-3/2}}

  int column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

void write_csv(const RunRecord& record, const std::string& path);
void write_dat(const RunRecord& record, const std::string& path);  // gnuplot-friendly
void write_manifest(const RunRecord& record, const std::string& path,
                    const std::map<std::string, std::string>& extra_files = {});

void write_trajectory(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory(const std::string& path);

std::string format_double(double v);  // deterministic shortest round-trip form

}  // namespace kg
