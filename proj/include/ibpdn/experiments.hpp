#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <ibpdn/solver.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

/// Seeded, config-driven experiment harness. Every field can come from a
/// JSON config file and be overridden by a same-named command-line flag.
/// The same config and seed always produce byte-identical output.
struct ExperimentConfig {
  std::string experiment;

  // instance geometry
  Index n = 64;
  Index m = 32;
  Index k_true = 8;
  Index s_known = 8;
  double rho_good = 1.0;  // fraction of s_known drawn from the true support
  double epsilon = 0.0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string ensemble = "gaussian";
  std::string model = "exact_sparse";  // or "power_law"
  double exponent = 1.0;

  // solver overrides
  std::optional<double> gamma;
  double alpha = 1.0;
  int max_iters = 20000;
  double tolerance = 1e-9;

  // constants experiment
  double delta_2k = 0.0;
  double delta_s2k = 0.0;

  // rip experiment
  Index q = 2;
  std::string method = "exact_enumeration";
  int samples = 5000;

  // noise_sweep / ctr_compare
  std::vector<double> epsilon_grid;
  Index k_bound = 0;  // 0: use the innovation size, floored at 1

  // phase experiment
  std::vector<Index> m_grid;
  std::vector<Index> k_grid;

  // sequence experiment
  int frames = 8;
  Index swaps_per_frame = 1;
  double support_threshold = 0.5;

  std::string out;  // output path; empty or "-" writes to stdout

  SolverConfig solver_config() const;
};

/// Merges JSON fields into the config; unknown keys are rejected.
void apply_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig config_from_json_file(const std::string& path);

/// Runs the configured experiment, writing its report (JSON) or table (CSV)
/// to the configured output. Returns a process exit code: 0 on success.
int run_experiment(const ExperimentConfig& config);

/// Same, writing to an explicit stream (used by tests).
void run_experiment(const ExperimentConfig& config, std::ostream& os);

}  // namespace ibpdn
