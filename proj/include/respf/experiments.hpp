#pragma once

#include <string>
#include <vector>

#include "respf/correlators.hpp"
#include "respf/oracle.hpp"
#include "respf/response.hpp"
#include "respf/sde.hpp"
#include "respf/types.hpp"

namespace respf {

/// Experiment configuration; defaults reproduce the published setups
/// (two-timescale r = 0.1; multiwell sigma = 1/2, sigma_m = 1/3,
/// sigma_1 = sigma_2 = 1/10 with tilt v(x) = exp(-(x-1)^2/4)).
struct ExperimentConfig {
  std::string experiment = "ou";  // ou | multiwell | chain-example
  double r = 0.1;
  double sigma = 0.5;
  double sigma_m = 1.0 / 3.0;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
  double epsilon = 0.1;
  std::vector<double> T_grid;     // filled with defaults when empty
  SimConfig sim;                  // dt, t_max, burn_in, seed, n_traj
  long n_direct = 100000;         // ensemble size of the forced comparison run
  std::string output_dir = ".";
  /// Coupling norms below this threshold are reported but not treated as
  /// genuine subsystem couplings when quoting the effective gap.
  double coupling_tol = 1e-9;

  void apply_defaults();
};

struct ExperimentResult {
  std::vector<std::string> files_written;
  std::string summary;
  bool ok = true;
};

/// Equilibrium ensemble -> correlators -> prediction over the T grid,
/// a coupled forced/unforced comparison ensemble, the closed-form bound
/// band; writes ou_response.csv and ou_response.svg.
ExperimentResult run_ou_experiment(const ExperimentConfig& cfg);

/// Multiwell landscape with pi(x,y) = x, kappa = identity: simulation
/// pipeline plus grid-oracle exact second order, remainder bound and both
/// projection gaps; writes multiwell_response.csv, multiwell_response.svg,
/// multiwell_potential.svg, multiwell_oracle.csv.
ExperimentResult run_multiwell_experiment(const ExperimentConfig& cfg);

/// Spectral analysis of the bundled 4-state example chain; writes
/// chain_spectral.csv.
ExperimentResult run_chain_example(const ExperimentConfig& cfg);

/// Oracle cross-check suite over a T sweep; nonzero-exit material on any
/// tolerance failure (result.ok = false).
ExperimentResult run_oracle_verify(const std::string& testbed,
                                   const std::string& output_dir);

/// Key = value / [section] config reader for ExperimentConfig.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace respf
