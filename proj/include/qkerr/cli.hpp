#pragma once

// Scenario runner: subcommands revival-scan, squeezing, wigner, delta.
// Flags may come from an optional JSON config file (--config); explicit flags
// override file values. Every run writes run_config.json with all defaults
// materialized, and exits 0 iff every requested output was written.

#include <optional>
#include <string>
#include <vector>

#include "qkerr/fock.hpp"

namespace qkerr {

struct ScanAxis {
  double min = 0.0;
  double max = 1.0;
  int n = 2;  // >= 2, endpoints included

  double at(int i) const { return min + (max - min) * i / (n - 1); }
};

// "MIN:MAX:N" -> ScanAxis; throws std::invalid_argument on malformed input.
ScanAxis parse_scan_axis(const std::string& text);

struct ScenarioConfig {
  ModelParams params;                 // chi=5, nu=1, theta=0 defaults
  double tail_epsilon = 1e-12;
  std::vector<int> m_list;            // default {0}
  std::vector<int> q_list;            // default {1}
  double tmax = 1.0;                  // in units of T_rev
  int samples = 256;
  std::optional<ScanAxis> nu_scan;    // squeezing: D_q vs nu
  std::optional<ScanAxis> theta_scan; // squeezing: D_q vs theta
  std::vector<double> at_times;       // wigner: times in units of T_rev, default {0, 0.5}
  double grid_extent = 0.0;           // 0 = per-state default
  int grid_points = 201;
  int threads = 0;                    // 0 = hardware concurrency
  std::string out_dir = ".";
};

// Subcommand drivers; each returns the list of files it wrote (relative to
// config.out_dir) and throws on numeric-contract or I/O failure.
std::vector<std::string> cmd_revival_scan(const ScenarioConfig& config);
std::vector<std::string> cmd_squeezing(const ScenarioConfig& config);
std::vector<std::string> cmd_wigner(const ScenarioConfig& config);
std::vector<std::string> cmd_delta(const ScenarioConfig& config);

// Full CLI entry point (argv[0] ignored); returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace qkerr
