#include "respf/grid.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>
#include <vector>

namespace respf {

void GridSpec::validate() const {
  if (dims < 1 || dims > 2) throw ConfigError("grid supports 1 or 2 dimensions");
  for (int a = 0; a < dims; ++a) {
    if (!(hi[static_cast<std::size_t>(a)] > lo[static_cast<std::size_t>(a)]))
      throw ConfigError("grid bounds must satisfy hi > lo");
    if (n[static_cast<std::size_t>(a)] < 16)
      throw ConfigError("grid needs at least 16 points per axis");
  }
  if (total_points() > 200000)
    throw ConfigError("grid exceeds the 200k-point dense-solve budget");
}

GridSpec GridSpec::line(double lo_, double hi_, Index n_) {
  GridSpec s;
  s.dims = 1;
  s.lo = {lo_, 0.0};
  s.hi = {hi_, 1.0};
  s.n = {n_, 1};
  return s;
}

GridSpec GridSpec::box(double lox, double hix, Index nx, double loy, double hiy,
                       Index ny) {
  GridSpec s;
  s.dims = 2;
  s.lo = {lox, loy};
  s.hi = {hix, hiy};
  s.n = {nx, ny};
  return s;
}

Vector grid_eval(const GridSpec& spec,
                 const std::function<double(const Vector&)>& f) {
  const Index N = spec.total_points();
  Vector out(N);
  Vector x(spec.dims);
  if (spec.dims == 1) {
    for (Index i = 0; i < spec.n[0]; ++i) {
      x[0] = spec.coord(0, i);
      out[i] = f(x);
    }
  } else {
    const Index ny = spec.n[1];
    for (Index i = 0; i < spec.n[0]; ++i) {
      x[0] = spec.coord(0, i);
      for (Index j = 0; j < ny; ++j) {
        x[1] = spec.coord(1, j);
        out[i * ny + j] = f(x);
      }
    }
  }
  return out;
}

Vector GridOperator::coordinate(int axis) const {
  return grid_eval(spec, [axis](const Vector& x) { return x[axis]; });
}

std::vector<int> GridOperator::projection_labels(int axis) const {
  const Index N = size();
  std::vector<int> labels(static_cast<std::size_t>(N));
  if (spec.dims == 1) {
    for (Index i = 0; i < N; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(i);
    return labels;
  }
  const Index ny = spec.n[1];
  for (Index i = 0; i < N; ++i)
    labels[static_cast<std::size_t>(i)] =
        static_cast<int>(axis == 0 ? i / ny : i % ny);
  return labels;
}

double GridOperator::norm_p(const Vector& f, double p) const {
  return std::pow((mu.array() * f.array().abs().pow(p)).sum(), 1.0 / p);
}

const SpMat& GridOperator::symmetrized() const {
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (!H_) {
    SpMat H = (-L0);
    for (int k = 0; k < H.outerSize(); ++k)
      for (SpMat::InnerIterator it(H, k); it; ++it)
        it.valueRef() *= sqrt_mu[it.row()] / sqrt_mu[it.col()];
    SpMat Ht = H.transpose();
    H = 0.5 * (H + Ht);
    H_ = std::make_shared<const SpMat>(std::move(H));
  }
  return *H_;
}

const GridOperator::DenseSpectrum& GridOperator::dense_spectrum() const {
  if (!dense_path())
    throw ConfigError("dense spectral factorization unavailable at this size");
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (!dense_) {
    const Matrix H = Matrix(symmetrized());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
    if (solver.info() != Eigen::Success)
      throw NumericError("grid eigen decomposition failed");
    auto spectrum = std::make_shared<DenseSpectrum>();
    spectrum->eigenvalues = solver.eigenvalues();
    spectrum->eigenvectors = solver.eigenvectors();
    dense_ = std::move(spectrum);
  }
  return *dense_;
}

GridOperator discretize(const Potential& pot, const Perturbation& pert,
                        const CoarseMap& cmap, const GridSpec& spec) {
  spec.validate();
  cmap.validate();
  if (cmap.full_dim != spec.dims)
    throw ConfigError("coarse map dimension does not match the grid");

  GridOperator op;
  op.spec = spec;
  op.U = grid_eval(spec, pot.energy);
  op.V = grid_eval(spec, [&](const Vector& x) {
    return pert.v(cmap.apply(x));
  });

  const Index N = spec.total_points();
  const double u_min = op.U.minCoeff();
  Vector gibbs = (-(op.U.array() - u_min)).exp();
  op.mu = gibbs / gibbs.sum();
  op.sqrt_mu = op.mu.array().sqrt();

  // boundary-layer mass gate: the stationary tails must be inside the box
  double boundary_mass = 0.0;
  if (spec.dims == 1) {
    boundary_mass = op.mu[0] + op.mu[N - 1];
  } else {
    const Index nx = spec.n[0], ny = spec.n[1];
    for (Index j = 0; j < ny; ++j)
      boundary_mass += op.mu[j] + op.mu[(nx - 1) * ny + j];
    for (Index i = 1; i + 1 < nx; ++i)
      boundary_mass += op.mu[i * ny] + op.mu[i * ny + ny - 1];
  }
  if (boundary_mass > spec.tail_tol)
    throw NumericError("domain too small: boundary-layer mass " +
                       std::to_string(boundary_mass) + " exceeds tail_tol");

  // reversible edge weights: rate i->j = exp(-(U_j - U_i)/2) / h^2, so
  // mu_i c_ij is symmetric; B is the eps-derivative of the same scheme
  // applied to U - eps V.
  std::vector<Eigen::Triplet<double>> tripL, tripB;
  Vector diagL = Vector::Zero(N), diagB = Vector::Zero(N);
  auto add_edge = [&](Index a, Index b, double h) {
    const double c = std::exp(-(op.U[b] - op.U[a]) / 2.0) / (h * h);
    tripL.emplace_back(a, b, c);
    diagL[a] -= c;
    const double bb = c * (op.V[b] - op.V[a]) / 2.0;
    tripB.emplace_back(a, b, bb);
    diagB[a] -= bb;
  };
  if (spec.dims == 1) {
    const double h = spec.h(0);
    for (Index i = 0; i < N; ++i) {
      if (i > 0) add_edge(i, i - 1, h);
      if (i + 1 < N) add_edge(i, i + 1, h);
    }
  } else {
    const Index nx = spec.n[0], ny = spec.n[1];
    const double hx = spec.h(0), hy = spec.h(1);
    for (Index i = 0; i < nx; ++i) {
      for (Index j = 0; j < ny; ++j) {
        const Index aidx = i * ny + j;
        if (i > 0) add_edge(aidx, aidx - ny, hx);
        if (i + 1 < nx) add_edge(aidx, aidx + ny, hx);
        if (j > 0) add_edge(aidx, aidx - 1, hy);
        if (j + 1 < ny) add_edge(aidx, aidx + 1, hy);
      }
    }
  }
  for (Index i = 0; i < N; ++i) {
    tripL.emplace_back(i, i, diagL[i]);
    tripB.emplace_back(i, i, diagB[i]);
  }
  op.L0.resize(N, N);
  op.L0.setFromTriplets(tripL.begin(), tripL.end());
  op.B.resize(N, N);
  op.B.setFromTriplets(tripB.begin(), tripB.end());
  return op;
}

}  // namespace respf
