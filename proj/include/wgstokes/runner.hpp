// Configuration-driven driver behind the CLI: validates a RunConfig and
// executes convergence studies, the cavity benchmark or a custom smoke run,
// writing CSV/VTK artifacts to the output directory.

#pragma once

#include <iosfwd>

#include "wgstokes/study.hpp"

namespace wgstokes {

struct RunConfig {
  std::string problem = "example71";  // example71 | example72 | cavity | custom
  int k = 1;
  std::string mesh = "triangular";
  std::vector<int> levels;  // defaults depend on the problem
  std::string solver = "direct";
  bool condense = false;
  std::string output_dir = ".";
  unsigned rng_seed = 1;
  std::string lid_side = "x1";
  double lid_speed = 1.0;
  double viscosity = 1.0;
  std::string mesh_file;  // custom problem: optional wgmesh import
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value text (one `key = value` or `key value` per line, # for
/// comments). Keys match the CLI flag names without the leading dashes.
RunConfig load_config_file(const std::string& path);

/// Fills defaults and checks invariants; throws ConfigError with an
/// actionable message.
void validate(RunConfig& config);

/// Runs a validated config; returns 0 and leaves artifacts in output_dir.
/// Solver failures surface as SolverError.
int run(const RunConfig& config, std::ostream& out);

}  // namespace wgstokes
