#pragma once

#include <cstdint>
#include <numbers>

#include "respf/coarse_map.hpp"
#include "respf/perturbation.hpp"
#include "respf/potential.hpp"
#include "respf/rng.hpp"
#include "respf/types.hpp"

namespace respf {

struct SimConfig {
  double dt = 1e-3;
  double t_max = 10.0;
  double burn_in = 100.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int n_traj = 1;
  /// sqrt(2) is the SDE noise amplitude; 1 reproduces runs made without it.
  double noise_scale = std::numbers::sqrt2;
  /// Exact Gaussian equilibrium draws are available for quadratic-form
  /// potentials only; BurnIn integrates the unforced dynamics from the origin.
  enum class Init { BurnIn, ExactGaussian };
  Init init = Init::BurnIn;

  void validate() const;
};

/// Time-discretized subsystem observations y_i = pi(x_{i dt}).
struct SubsystemTrajectory {
  double dt = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  Matrix samples;  // one row per sample, sub_dim columns

  Index size() const { return samples.rows(); }
  Index sub_dim() const { return samples.cols(); }
  double span() const { return dt * static_cast<double>(samples.rows() - 1); }
};

/// Perturbed drift -grad U(x) + eps * lift(grad v(pi(x))). The lift scatters
/// the m subsystem components back onto the projected coordinates.
Vector drift(const Potential& pot, const Perturbation& pert,
             const CoarseMap& cmap, double epsilon, const Vector& x);

/// x + drift dt + noise_scale sqrt(dt) gauss.
Vector euler_maruyama_step(const Vector& x, const Vector& drift_val, double dt,
                           const Vector& gauss,
                           double noise_scale = std::numbers::sqrt2);

/// A state distributed (approximately) per mu = e^{-U}/Z: either an exact
/// Gaussian draw (quadratic potentials) or the endpoint of a burn-in
/// integration of the unforced dynamics started at the origin.
Vector sample_equilibrium(const Potential& pot, const SimConfig& cfg,
                          GaussianRng& rng);

/// Equilibrium-initialized path of pi(x_t) under eps forcing; length
/// floor(t_max/dt)+1; bitwise deterministic given cfg.seed.
SubsystemTrajectory simulate(const Potential& pot, const Perturbation& pert,
                             const CoarseMap& cmap, const SimConfig& cfg,
                             double epsilon);

/// Same stepping as simulate(), recording the full state.
Matrix simulate_full(const Potential& pot, const Perturbation& pert,
                     const CoarseMap& cmap, const SimConfig& cfg,
                     double epsilon);

/// Exact stationary covariance of dx = -Ax dt + noise_scale dW for SPD A,
/// i.e. the solution of A C + C A' = noise_scale^2 I.
Matrix lyapunov_stationary_covariance(const Matrix& A, double noise_scale);

}  // namespace respf
