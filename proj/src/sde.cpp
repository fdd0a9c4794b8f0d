#include "respf/sde.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "respf/coarse_map.hpp"

namespace respf {

CoarseMap CoarseMap::projection(Index d, std::vector<Index> idx) {
  CoarseMap m;
  m.full_dim = d;
  m.sub_dim = static_cast<Index>(idx.size());
  m.indices = std::move(idx);
  m.validate();
  return m;
}

CoarseMap CoarseMap::identity(Index d) {
  std::vector<Index> idx(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  return projection(d, std::move(idx));
}

void CoarseMap::validate() const {
  if (sub_dim < 1 || sub_dim > full_dim)
    throw ConfigError("coarse map needs 1 <= m <= d");
  std::vector<Index> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("coarse map indices must be unique");
  if (sorted.front() < 0 || sorted.back() >= full_dim)
    throw ConfigError("coarse map index out of range");
}

Perturbation make_cosine_tilt(Index m) {
  Perturbation p;
  p.sub_dim = m;
  p.v = [](const Vector& y) { return -std::cos(y[0] - std::numbers::pi / 4); };
  p.grad_v = [m](const Vector& y) -> Vector {
    Vector g = Vector::Zero(m);
    g[0] = std::sin(y[0] - std::numbers::pi / 4);
    return g;
  };
  return p;
}

Perturbation make_gaussian_tilt(Index m) {
  Perturbation p;
  p.sub_dim = m;
  p.v = [](const Vector& y) {
    return std::exp(-(y[0] - 1) * (y[0] - 1) / 4.0);
  };
  p.grad_v = [m](const Vector& y) -> Vector {
    Vector g = Vector::Zero(m);
    g[0] = std::exp(-(y[0] - 1) * (y[0] - 1) / 4.0) * (-(y[0] - 1) / 2.0);
    return g;
  };
  return p;
}

Perturbation make_zero_perturbation(Index m) {
  Perturbation p;
  p.sub_dim = m;
  p.v = [](const Vector&) { return 0.0; };
  p.grad_v = [m](const Vector&) -> Vector { return Vector::Zero(m); };
  return p;
}

Perturbation make_linear_tilt(Index m) {
  Perturbation p;
  p.sub_dim = m;
  p.v = [](const Vector& y) { return y[0]; };
  p.grad_v = [m](const Vector&) -> Vector {
    Vector g = Vector::Zero(m);
    g[0] = 1.0;
    return g;
  };
  return p;
}

void check_perturbation_gradient(const Perturbation& pert, std::uint64_t seed,
                                 int n_probes, double rel_tol) {
  GaussianRng rng(seed);
  const double step = 1e-5;
  for (int probe = 0; probe < n_probes; ++probe) {
    const Vector y = rng.gauss_vector(pert.sub_dim);
    const Vector g = pert.grad_v(y);
    double scale = std::max(1.0, g.norm());
    for (Index i = 0; i < pert.sub_dim; ++i) {
      Vector yp = y, ym = y;
      yp[i] += step;
      ym[i] -= step;
      const double fd = (pert.v(yp) - pert.v(ym)) / (2 * step);
      if (std::abs(fd - g[i]) > rel_tol * scale)
        throw NumericError("tilt gradient mismatch vs finite differences");
    }
  }
}

void SimConfig::validate() const {
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (t_max < 0) throw ConfigError("t_max must be >= 0");
  if (n_traj < 1) throw ConfigError("n_traj must be >= 1");
  if (!(noise_scale > 0)) throw ConfigError("noise_scale must be positive");
}

Vector drift(const Potential& pot, const Perturbation& pert,
             const CoarseMap& cmap, double epsilon, const Vector& x) {
  Vector d = -pot.gradient(x);
  if (epsilon != 0.0) {
    const Vector gv = pert.grad_v(cmap.apply(x));
    for (Index j = 0; j < cmap.sub_dim; ++j)
      d[cmap.indices[static_cast<std::size_t>(j)]] += epsilon * gv[j];
  }
  for (Index i = 0; i < d.size(); ++i)
    if (!std::isfinite(d[i]))
      throw NumericError("non-finite drift at coordinate " + std::to_string(i));
  return d;
}

Vector euler_maruyama_step(const Vector& x, const Vector& drift_val, double dt,
                           const Vector& gauss, double noise_scale) {
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  return x + drift_val * dt + noise_scale * std::sqrt(dt) * gauss;
}

namespace {

constexpr double kDivergenceRadius = 1e6;

void check_bounded(const Vector& x) {
  if (x.norm() > kDivergenceRadius)
    throw NumericError(
        "trajectory diverged beyond |x| = 1e6 (dt too large or potential not confining)");
}

Vector integrate_unforced(const Potential& pot, const SimConfig& cfg,
                          GaussianRng& rng, Vector x, double duration) {
  const long steps = static_cast<long>(std::floor(duration / cfg.dt + 0.5));
  const double amp = cfg.noise_scale * std::sqrt(cfg.dt);
  for (long s = 0; s < steps; ++s) {
    const Vector g = rng.gauss_vector(pot.dim);
    x += -pot.gradient(x) * cfg.dt + amp * g;
    check_bounded(x);
  }
  return x;
}

}  // namespace

Matrix lyapunov_stationary_covariance(const Matrix& A, double noise_scale) {
  if (!A.isApprox(A.transpose(), 1e-12))
    throw ConfigError("stationary covariance shortcut requires symmetric A");
  // A C + C A' = s^2 I with symmetric A gives C = (s^2/2) A^{-1}.
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw NumericError("quadratic form is not positive definite");
  const Index d = A.rows();
  return 0.5 * noise_scale * noise_scale *
         llt.solve(Matrix::Identity(d, d));
}

Vector sample_equilibrium(const Potential& pot, const SimConfig& cfg,
                          GaussianRng& rng) {
  cfg.validate();
  if (cfg.init == SimConfig::Init::ExactGaussian) {
    if (!pot.quadratic_matrix)
      throw ConfigError("exact Gaussian initialization needs a quadratic-form potential");
    const Matrix C = lyapunov_stationary_covariance(*pot.quadratic_matrix,
                                                    cfg.noise_scale);
    Eigen::LLT<Matrix> llt(C);
    return llt.matrixL() * rng.gauss_vector(pot.dim);
  }
  return integrate_unforced(pot, cfg, rng, Vector::Zero(pot.dim), cfg.burn_in);
}

namespace {

template <typename Record>
void run_path(const Potential& pot, const Perturbation& pert,
              const CoarseMap& cmap, const SimConfig& cfg, double epsilon,
              Record&& record) {
  GaussianRng rng(cfg.seed);
  Vector x = sample_equilibrium(pot, cfg, rng);
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  const double amp = cfg.noise_scale * std::sqrt(cfg.dt);
  record(0L, x);
  for (long s = 1; s <= n_steps; ++s) {
    const Vector d = drift(pot, pert, cmap, epsilon, x);
    x += d * cfg.dt + amp * rng.gauss_vector(pot.dim);
    check_bounded(x);
    record(s, x);
  }
}

}  // namespace

SubsystemTrajectory simulate(const Potential& pot, const Perturbation& pert,
                             const CoarseMap& cmap, const SimConfig& cfg,
                             double epsilon) {
  cmap.validate();
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  SubsystemTrajectory traj;
  traj.dt = cfg.dt;
  traj.epsilon = epsilon;
  traj.seed = cfg.seed;
  traj.samples.resize(n_steps + 1, cmap.sub_dim);
  run_path(pot, pert, cmap, cfg, epsilon, [&](long s, const Vector& x) {
    traj.samples.row(s) = cmap.apply(x).transpose();
  });
  return traj;
}

Matrix simulate_full(const Potential& pot, const Perturbation& pert,
                     const CoarseMap& cmap, const SimConfig& cfg,
                     double epsilon) {
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  Matrix out(n_steps + 1, pot.dim);
  run_path(pot, pert, cmap, cfg, epsilon, [&](long s, const Vector& x) {
    out.row(s) = x.transpose();
  });
  return out;
}

}  // namespace respf
