#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "respf/sde.hpp"
#include "respf/types.hpp"

namespace respf {

/// Scalar observable of the subsystem state.
struct Observable {
  Index sub_dim = 1;
  std::string name;
  std::function<double(const Eigen::Ref<const Vector>&)> eval;
};

Observable make_coordinate_observable(Index sub_dim, Index coord,
                                      std::string name = "y");
Observable make_constant_observable(Index sub_dim, double value);
Observable observable_from_function(
    Index sub_dim, std::string name,
    std::function<double(const Eigen::Ref<const Vector>&)> f);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Ergodic time average of obs along an equilibrium trajectory; standard
/// error by batch means with ceil(sqrt(N)) batches. Requires >= 16 samples.
Estimate static_average(const SubsystemTrajectory& traj, const Observable& obs);

/// Stationary lagged average (1/(N-l)) sum a(y_i) b(y_{i+l}) over all
/// overlapping pairs; the lag must sit on the sampling grid (no silent
/// rounding). With a single pair the value is returned and the standard
/// error is flagged unreliable (infinity).
Estimate lagged_average(const SubsystemTrajectory& traj, const Observable& a,
                        const Observable& b, double lag);

/// The nine equilibrium averages entering the second-order response
/// estimator at horizon T, with statistical errors.
struct CorrelatorSet {
  double T = 0.0;
  double dt = 0.0;
  long n_traj = 0;
  long n_samples = 0;
  Estimate mean_k, mean_V, mean_Vk, mean_V2, mean_V2k;
  Estimate lag_V_k_T;      // <V P_T k>
  Estimate lag_V_Vk_T;     // <V P_T (Vk)>
  Estimate lag_V_k_halfT;  // <P_{T/2} k, V>
  Estimate lag_V_V_halfT;  // <P_{T/2} V, V>
};

/// Per-trajectory sums: statics (k, V, Vk, V2, V2k) and, per requested step
/// lag, the three lagged products needed by the estimator. Block partial
/// sums (ceil(sqrt(N)) contiguous blocks) back batch-means errors; they are
/// optional so large ensembles can skip the bookkeeping.
struct TrajectorySums {
  struct LagSums {
    long lag = 0;
    long pairs = 0;
    std::array<double, 3> sums{};                   // V.k, V.(Vk), V.V
    std::array<std::vector<double>, 3> blocks;
  };
  long n = 0;
  std::array<double, 5> statics{};
  std::array<std::vector<double>, 5> static_blocks;
  std::vector<LagSums> lags;
};

/// Streaming scanner: feed samples one by one (ring buffer of max lag);
/// never retains the trajectory.
class TrajectoryScanner {
 public:
  TrajectoryScanner(const Observable& kappa, const Observable& v,
                    std::vector<long> lags_steps, long n_expected,
                    bool want_blocks = true);
  void add(const Eigen::Ref<const Vector>& y);
  TrajectorySums finish();

 private:
  Observable kappa_, v_;
  TrajectorySums out_;
  long n_expected_ = 0;
  bool want_blocks_ = false;
  long max_lag_ = 0;
  long head_ = 0;
  std::vector<double> ring_k_, ring_V_, ring_Vk_;
  std::vector<long> block_len_static_;
  std::vector<std::vector<long>> block_len_lag_;
};

TrajectorySums scan_trajectory(const SubsystemTrajectory& traj,
                               const Observable& kappa, const Observable& v,
                               const std::vector<long>& lags_steps,
                               bool want_blocks = true);

/// Pools per-trajectory sums into a CorrelatorSet at horizon T (lags l_T and
/// l_T/2 must be present in every TrajectorySums). Pooling weight is the
/// usable pair count. Standard errors: batch means for a single trajectory,
/// weighted between-trajectory dispersion otherwise.
CorrelatorSet pool_correlators(const std::vector<TrajectorySums>& sums,
                               double T, double dt);

/// scan + pool over stored trajectories; all must share dt and eps = 0
/// provenance. T and T/2 must land on the sampling grid (even step count).
CorrelatorSet correlator_bundle(const std::vector<SubsystemTrajectory>& trajs,
                                const Observable& kappa, const Observable& v,
                                double T);

/// Step count of a horizon on the dt grid; throws DataError when T is not
/// an even multiple of dt within 1e-9.
long horizon_steps(double T, double dt);

/// name,value,se rows for the nine entries plus T/dt/n_traj/n_samples
/// metadata rows.
std::string correlator_set_csv(const CorrelatorSet& c);
CorrelatorSet correlator_set_from_csv(std::istream& in);

}  // namespace respf
