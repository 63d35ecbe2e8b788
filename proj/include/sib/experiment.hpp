#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sib/simulation.hpp"

namespace sib {

// Grid description: one simulation run per (policy, seed) cell. Catalog,
// inherent profiles and random graphs are derived from each cell's seed, so
// every policy faces the same environment at a given seed.
struct ExperimentConfig {
  int n = 10;
  int d = 5;
  double alpha = 0.05;  // default follows the experiment text; the sweep table bolds 0.1
  double sigma = 1.0;
  int horizon = 100;

  std::string catalog = "ball";  // ball | finite
  int catalog_size = 100;        // M, finite catalogs
  std::string catalog_file;      // optional item CSV, overrides random generation

  std::string graph = "cmp";  // cmp | er | ba | file
  std::string graph_file;
  double teleport = 0.0;

  std::string dynamics = "expected";  // expected | stochastic | fixpoint
  std::vector<std::string> policies = {"linrel", "ts", "regression", "rand"};

  double delta = 0.1;
  double beta_scale = 1e-5;
  double lambda = 1e-6;
  double kappa = 1.0;
  std::string ts_mode = "recompute";  // recompute | incremental
  double linucb_c = 1.0;
  int linucb_max_iter = 2000;
  double linucb_tol = 1e-7;

  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string u0_file;  // optional inherent-profile CSV (n x d)

  bool timing = false;  // write measured wall_ns into the CSVs (breaks byte-identical reruns)
  int workers = 0;      // parallel cells; 0 = hardware concurrency
};

/// `key = value` lines; '#' starts a comment; [section] headers are allowed
/// and ignored. Unknown keys are reported as errors.
ExperimentConfig load_config(const std::string& path);

/// Field-level validation messages; empty means the config is runnable.
std::vector<std::string> validate(const ExperimentConfig& cfg);

/// Environment for one cell, derived deterministically from the seed.
SimConfig make_sim_config(const ExperimentConfig& cfg, uint64_t seed);

/// Dispatch one cell.
RunResult run_policy(const std::string& policy, const SimConfig& sim,
                     const ExperimentConfig& cfg);

// Runs the whole grid and writes regret.csv, summary.csv, per-policy curve
// files, plot.gp and bounds.txt under out_dir. Cells execute in parallel up
// to the worker budget; output order is deterministic.
void run_grid(const ExperimentConfig& cfg, const std::string& out_dir);

/// Text table of the theoretical regret bounds for the config's horizon.
std::string report_bounds(const ExperimentConfig& cfg);

/// Gnuplot script plotting one mean-regret curve per policy; references only
/// curve files that exist under out_dir.
std::string emit_plots(const std::vector<std::string>& policies, const std::string& out_dir);

}  // namespace sib
