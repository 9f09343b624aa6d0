#pragma once

#include <string>
#include <vector>

#include "cutfem/studies.hpp"

namespace cutfem {

/// Settings shared by the command-line drivers. Every key has a default;
/// the material defaults are sandstone (domain 1) and granite (domain 2).
struct RunConfig {
  Scenario scenario = Scenario::PlaneWaveCavity;
  int order = 1;
  int cells = 24;
  Material material1 = kSandstone;
  Material material2 = kGranite;
  double omega = 3.14159265358979323846;
  double end_time = 2.0;
  double safety = 0.2;
  double cavity_radius = 1.0;
  double interface_x = std::numeric_limits<double>::quiet_NaN();
  int quadrature_degree = 0;  // 0 selects 2p + 2
  PenaltyOverrides penalty{};
  std::string output_dir = ".";
  std::vector<double> snapshot_times{2.0};
  int snapshot_resolution = 201;
  SweepProblem sweep_problem = SweepProblem::Single;
  bool stabilize = true;
  std::vector<double> sweep_fractions = default_sweep_fractions();

  StudyOptions study_options(int threads = 1) const;
  CutSweepOptions sweep_options(int threads = 1) const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys, bad
/// values and duplicate keys raise ConfigError("line N: ...").
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// All recognised keys with their current values, one per line.
std::string dump_config(const RunConfig& cfg);

}  // namespace cutfem
