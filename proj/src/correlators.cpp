#include "respf/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "respf/csv.hpp"

namespace respf {

Observable make_coordinate_observable(Index sub_dim, Index coord,
                                      std::string name) {
  if (coord < 0 || coord >= sub_dim)
    throw ConfigError("observable coordinate out of range");
  Observable o;
  o.sub_dim = sub_dim;
  o.name = std::move(name);
  o.eval = [coord](const Eigen::Ref<const Vector>& y) { return y[coord]; };
  return o;
}

Observable make_constant_observable(Index sub_dim, double value) {
  Observable o;
  o.sub_dim = sub_dim;
  o.name = "const";
  o.eval = [value](const Eigen::Ref<const Vector>&) { return value; };
  return o;
}

Observable observable_from_function(
    Index sub_dim, std::string name,
    std::function<double(const Eigen::Ref<const Vector>&)> f) {
  Observable o;
  o.sub_dim = sub_dim;
  o.name = std::move(name);
  o.eval = std::move(f);
  return o;
}

namespace {

constexpr long kMinSamples = 16;

/// Batch-means standard error of the mean from per-block sums; blocks carry
/// equal length except possibly the last (dropped when short).
double batch_means_se(const std::vector<double>& block_sums, long block_len,
                      long n_total) {
  const long nb = static_cast<long>(block_sums.size());
  if (nb < 2 || block_len < 1) return std::numeric_limits<double>::infinity();
  double mean_of_means = 0;
  for (double s : block_sums) mean_of_means += s / static_cast<double>(block_len);
  mean_of_means /= static_cast<double>(nb);
  double var = 0;
  for (double s : block_sums) {
    const double d = s / static_cast<double>(block_len) - mean_of_means;
    var += d * d;
  }
  var /= static_cast<double>(nb - 1);
  (void)n_total;
  return std::sqrt(var / static_cast<double>(nb));
}

long block_count(long n) {
  return static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));
}

}  // namespace

Estimate static_average(const SubsystemTrajectory& traj, const Observable& obs) {
  const long n = traj.size();
  if (n < kMinSamples)
    throw DataError("static average needs at least 16 samples");
  const long nb = block_count(n);
  const long bl = n / nb;
  std::vector<double> blocks(static_cast<std::size_t>(nb), 0.0);
  double total = 0;
  for (long i = 0; i < n; ++i) {
    const double val = obs.eval(traj.samples.row(i).transpose());
    total += val;
    const long b = std::min(i / bl, nb - 1);
    if (i < nb * bl) blocks[static_cast<std::size_t>(b)] += val;
  }
  Estimate e;
  e.value = total / static_cast<double>(n);
  e.se = batch_means_se(blocks, bl, n);
  return e;
}

long horizon_steps(double T, double dt) {
  const double raw = T / dt;
  const long steps = static_cast<long>(std::llround(raw));
  if (std::abs(raw - static_cast<double>(steps)) > 1e-9)
    throw DataError("lag is not on the sampling grid (no silent rounding)");
  return steps;
}

Estimate lagged_average(const SubsystemTrajectory& traj, const Observable& a,
                        const Observable& b, double lag) {
  const long n = traj.size();
  const long l = horizon_steps(lag, traj.dt);
  if (l < 0 || l >= n) throw DataError("lag exceeds the trajectory span");
  const long pairs = n - l;
  double total = 0;
  const long nb = std::max<long>(1, block_count(pairs));
  const long bl = std::max<long>(1, pairs / nb);
  std::vector<double> blocks(static_cast<std::size_t>(nb), 0.0);
  for (long i = 0; i < pairs; ++i) {
    const double val = a.eval(traj.samples.row(i).transpose()) *
                       b.eval(traj.samples.row(i + l).transpose());
    total += val;
    const long blk = std::min(i / bl, nb - 1);
    if (i < nb * bl) blocks[static_cast<std::size_t>(blk)] += val;
  }
  Estimate e;
  e.value = total / static_cast<double>(pairs);
  e.se = (pairs < 2) ? std::numeric_limits<double>::infinity()
                     : batch_means_se(blocks, bl, pairs);
  return e;
}

TrajectoryScanner::TrajectoryScanner(const Observable& kappa,
                                     const Observable& v,
                                     std::vector<long> lags_steps,
                                     long n_expected, bool want_blocks)
    : kappa_(kappa), v_(v), n_expected_(n_expected), want_blocks_(want_blocks) {
  std::sort(lags_steps.begin(), lags_steps.end());
  lags_steps.erase(std::unique(lags_steps.begin(), lags_steps.end()),
                   lags_steps.end());
  for (long l : lags_steps) {
    if (l < 0) throw ConfigError("lag steps must be nonnegative");
    TrajectorySums::LagSums ls;
    ls.lag = l;
    out_.lags.push_back(std::move(ls));
  }
  max_lag_ = lags_steps.empty() ? 0 : lags_steps.back();
  if (n_expected_ <= max_lag_)
    throw DataError("trajectory shorter than the largest requested lag");
  const std::size_t ring = static_cast<std::size_t>(max_lag_) + 1;
  ring_k_.resize(ring);
  ring_V_.resize(ring);
  ring_Vk_.resize(ring);
  if (want_blocks_) {
    const long nb = block_count(n_expected_);
    block_len_static_.assign(1, std::max<long>(1, n_expected_ / nb));
    for (auto& sb : out_.static_blocks)
      sb.assign(static_cast<std::size_t>(nb), 0.0);
    block_len_lag_.resize(out_.lags.size());
    for (std::size_t q = 0; q < out_.lags.size(); ++q) {
      const long pairs = n_expected_ - out_.lags[q].lag;
      const long nbq = std::max<long>(1, block_count(pairs));
      block_len_lag_[q].assign(1, std::max<long>(1, pairs / nbq));
      for (auto& bb : out_.lags[q].blocks)
        bb.assign(static_cast<std::size_t>(nbq), 0.0);
    }
  }
}

void TrajectoryScanner::add(const Eigen::Ref<const Vector>& y) {
  const double k = kappa_.eval(y);
  const double V = v_.eval(y);
  const double Vk = V * k;
  const long i = out_.n;
  const std::size_t slot = static_cast<std::size_t>(i % (max_lag_ + 1));
  ring_k_[slot] = k;
  ring_V_[slot] = V;
  ring_Vk_[slot] = Vk;

  out_.statics[0] += k;
  out_.statics[1] += V;
  out_.statics[2] += Vk;
  out_.statics[3] += V * V;
  out_.statics[4] += V * Vk;
  if (want_blocks_) {
    const long bl = block_len_static_[0];
    const long nb = static_cast<long>(out_.static_blocks[0].size());
    const long b = std::min(i / bl, nb - 1);
    if (i < nb * bl) {
      out_.static_blocks[0][static_cast<std::size_t>(b)] += k;
      out_.static_blocks[1][static_cast<std::size_t>(b)] += V;
      out_.static_blocks[2][static_cast<std::size_t>(b)] += Vk;
      out_.static_blocks[3][static_cast<std::size_t>(b)] += V * V;
      out_.static_blocks[4][static_cast<std::size_t>(b)] += V * Vk;
    }
  }
  for (std::size_t q = 0; q < out_.lags.size(); ++q) {
    auto& ls = out_.lags[q];
    const long j = i - ls.lag;  // pair (j, i): V at j, observable at i
    if (j < 0) continue;
    const std::size_t jslot = static_cast<std::size_t>(j % (max_lag_ + 1));
    const double Vj = ring_V_[jslot];
    const double c0 = Vj * k, c1 = Vj * Vk, c2 = Vj * V;
    ls.sums[0] += c0;
    ls.sums[1] += c1;
    ls.sums[2] += c2;
    ++ls.pairs;
    if (want_blocks_) {
      const long bl = block_len_lag_[q][0];
      const long nb = static_cast<long>(ls.blocks[0].size());
      const long b = std::min(j / bl, nb - 1);
      if (j < nb * bl) {
        ls.blocks[0][static_cast<std::size_t>(b)] += c0;
        ls.blocks[1][static_cast<std::size_t>(b)] += c1;
        ls.blocks[2][static_cast<std::size_t>(b)] += c2;
      }
    }
  }
  ++out_.n;
}

TrajectorySums TrajectoryScanner::finish() {
  if (out_.n != n_expected_)
    throw DataError("scanner fed a different sample count than declared");
  return std::move(out_);
}

TrajectorySums scan_trajectory(const SubsystemTrajectory& traj,
                               const Observable& kappa, const Observable& v,
                               const std::vector<long>& lags_steps,
                               bool want_blocks) {
  TrajectoryScanner scanner(kappa, v, lags_steps, traj.size(), want_blocks);
  for (long i = 0; i < traj.size(); ++i)
    scanner.add(traj.samples.row(i).transpose());
  return scanner.finish();
}

namespace {

/// Pools (weight, mean) pairs; se from weighted between-trajectory
/// dispersion, or batch means inside the single available trajectory.
Estimate pool_entry(const std::vector<double>& weights,
                    const std::vector<double>& means,
                    const std::vector<double>* single_blocks,
                    long single_block_len) {
  double wsum = 0, mean = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    wsum += weights[i];
    mean += weights[i] * means[i];
  }
  mean = wsum > 0 ? mean / wsum : 0.0;
  Estimate e;
  e.value = mean;
  if (weights.size() >= 2) {
    double var = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const double d = means[i] - mean;
      var += weights[i] * weights[i] * d * d;
    }
    const double nt = static_cast<double>(weights.size());
    e.se = wsum > 0 ? std::sqrt(var * nt / (nt - 1.0)) / wsum : 0.0;
  } else if (single_blocks) {
    e.se = batch_means_se(*single_blocks, single_block_len, 0);
  } else {
    e.se = std::numeric_limits<double>::infinity();
  }
  return e;
}

}  // namespace

CorrelatorSet pool_correlators(const std::vector<TrajectorySums>& sums,
                               double T, double dt) {
  if (sums.empty()) throw DataError("no trajectories to pool");
  const long lT = horizon_steps(T, dt);
  if (lT % 2 != 0)
    throw DataError("horizon must be an even number of steps so T/2 sits on the grid");
  const long lH = lT / 2;
  auto lag_index = [&](const TrajectorySums& ts, long lag) -> std::size_t {
    for (std::size_t q = 0; q < ts.lags.size(); ++q)
      if (ts.lags[q].lag == lag) return q;
    throw DataError("requested horizon was not accumulated");
  };

  CorrelatorSet c;
  c.T = T;
  c.dt = dt;
  c.n_traj = static_cast<long>(sums.size());
  for (const auto& ts : sums) c.n_samples += ts.n;

  const bool single = sums.size() == 1;
  auto pool_static = [&](int which) {
    std::vector<double> w, m;
    for (const auto& ts : sums) {
      w.push_back(static_cast<double>(ts.n));
      m.push_back(ts.statics[static_cast<std::size_t>(which)] /
                  static_cast<double>(ts.n));
    }
    const auto& blocks = sums[0].static_blocks[static_cast<std::size_t>(which)];
    const long bl =
        blocks.empty() ? 0 : sums[0].n / static_cast<long>(blocks.size());
    return pool_entry(w, m, single && !blocks.empty() ? &blocks : nullptr, bl);
  };
  auto pool_lag = [&](long lag, int which) {
    std::vector<double> w, m;
    for (const auto& ts : sums) {
      const auto& ls = ts.lags[lag_index(ts, lag)];
      w.push_back(static_cast<double>(ls.pairs));
      m.push_back(ls.pairs > 0
                      ? ls.sums[static_cast<std::size_t>(which)] /
                            static_cast<double>(ls.pairs)
                      : 0.0);
    }
    const auto& ls0 = sums[0].lags[lag_index(sums[0], lag)];
    const auto& blocks = ls0.blocks[static_cast<std::size_t>(which)];
    const long bl =
        blocks.empty() ? 0 : std::max<long>(1, ls0.pairs / static_cast<long>(blocks.size()));
    return pool_entry(w, m, single && !blocks.empty() ? &blocks : nullptr, bl);
  };

  c.mean_k = pool_static(0);
  c.mean_V = pool_static(1);
  c.mean_Vk = pool_static(2);
  c.mean_V2 = pool_static(3);
  c.mean_V2k = pool_static(4);
  c.lag_V_k_T = pool_lag(lT, 0);
  c.lag_V_Vk_T = pool_lag(lT, 1);
  c.lag_V_k_halfT = pool_lag(lH, 0);
  c.lag_V_V_halfT = pool_lag(lH, 2);
  return c;
}

CorrelatorSet correlator_bundle(const std::vector<SubsystemTrajectory>& trajs,
                                const Observable& kappa, const Observable& v,
                                double T) {
  if (trajs.empty()) throw DataError("no trajectories supplied");
  const double dt = trajs.front().dt;
  for (const auto& t : trajs) {
    if (std::abs(t.dt - dt) > 1e-15)
      throw ConfigError("mixed dt across trajectories");
    if (t.epsilon != 0.0)
      throw ConfigError("correlators require unforced (eps = 0) trajectories");
  }
  const long lT = horizon_steps(T, dt);
  if (lT % 2 != 0)
    throw DataError("horizon must be an even number of steps so T/2 sits on the grid");
  std::vector<TrajectorySums> sums;
  sums.reserve(trajs.size());
  for (const auto& t : trajs)
    sums.push_back(scan_trajectory(t, kappa, v, {lT, lT / 2}, true));
  return pool_correlators(sums, T, dt);
}

namespace {

void emit(std::ostringstream& out, const char* name, const Estimate& e) {
  out << name << ',' << format_g17(e.value) << ',' << format_g17(e.se) << "\n";
}

}  // namespace

std::string correlator_set_csv(const CorrelatorSet& c) {
  std::ostringstream out;
  out << "name,value,se\n";
  emit(out, "mean_k", c.mean_k);
  emit(out, "mean_V", c.mean_V);
  emit(out, "mean_Vk", c.mean_Vk);
  emit(out, "mean_V2", c.mean_V2);
  emit(out, "mean_V2k", c.mean_V2k);
  emit(out, "lag_V_k_T", c.lag_V_k_T);
  emit(out, "lag_V_Vk_T", c.lag_V_Vk_T);
  emit(out, "lag_V_k_halfT", c.lag_V_k_halfT);
  emit(out, "lag_V_V_halfT", c.lag_V_V_halfT);
  out << "T," << format_g17(c.T) << ",\n";
  out << "dt," << format_g17(c.dt) << ",\n";
  out << "n_traj," << c.n_traj << ",\n";
  out << "n_samples," << c.n_samples << ",\n";
  return out.str();
}

CorrelatorSet correlator_set_from_csv(std::istream& in) {
  CorrelatorSet c;
  std::string line;
  std::map<std::string, Estimate> entries;
  while (std::getline(in, line)) {
    if (line.empty() || line == "name,value,se") continue;
    std::istringstream ss(line);
    std::string name, val, se;
    std::getline(ss, name, ',');
    std::getline(ss, val, ',');
    std::getline(ss, se, ',');
    if (name == "T") c.T = std::stod(val);
    else if (name == "dt") c.dt = std::stod(val);
    else if (name == "n_traj") c.n_traj = std::stol(val);
    else if (name == "n_samples") c.n_samples = std::stol(val);
    else entries[name] = Estimate{std::stod(val), se.empty() ? 0.0 : std::stod(se)};
  }
  auto get = [&](const char* name) {
    auto it = entries.find(name);
    if (it == entries.end())
      throw DataError(std::string("correlator CSV misses entry ") + name);
    return it->second;
  };
  c.mean_k = get("mean_k");
  c.mean_V = get("mean_V");
  c.mean_Vk = get("mean_Vk");
  c.mean_V2 = get("mean_V2");
  c.mean_V2k = get("mean_V2k");
  c.lag_V_k_T = get("lag_V_k_T");
  c.lag_V_Vk_T = get("lag_V_Vk_T");
  c.lag_V_k_halfT = get("lag_V_k_halfT");
  c.lag_V_V_halfT = get("lag_V_V_halfT");
  return c;
}

}  // namespace respf
