#include "respf/krylov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace respf {

namespace {

/// y = e^{-tau T} e1 * beta for symmetric tridiagonal T (dense, small).
Vector small_expm_sym(const Matrix& T, double tau, double beta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(T);
  const Vector phase = (-tau * es.eigenvalues().array()).exp();
  return es.eigenvectors() *
         (phase.array() * es.eigenvectors().row(0).transpose().array() * beta)
             .matrix();
}

}  // namespace

Vector expm_symmetric_apply(const SpMat& H, double t, const Vector& g,
                            double rel_tol, int max_krylov) {
  if (t < 0) throw ConfigError("expm time must be >= 0");
  if (t == 0 || g.norm() == 0) return g;
  const Index n = g.size();
  const int m_max = static_cast<int>(std::min<Index>(max_krylov, n));
  Vector w = g;
  double remaining = t;
  const double scale = g.norm();

  while (remaining > 1e-300) {
    const double beta = w.norm();
    if (beta == 0) return w;
    // Lanczos basis from w; basis is step-size independent, so a rejected
    // step only recomputes the small exponential.
    Matrix V(n, m_max);
    Matrix T = Matrix::Zero(m_max, m_max);
    V.col(0) = w / beta;
    int m = 0;
    double next_beta = 0;
    bool breakdown = false;
    for (int j = 0; j < m_max; ++j) {
      Vector z = H * V.col(j);
      const double alpha = V.col(j).dot(z);
      T(j, j) = alpha;
      z -= alpha * V.col(j);
      if (j > 0) z -= T(j, j - 1) * V.col(j - 1);
      // full reorthogonalization
      for (int pass = 0; pass < 2; ++pass)
        z -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * z);
      next_beta = z.norm();
      m = j + 1;
      if (next_beta < 1e-13 * scale) {
        breakdown = true;
        break;
      }
      if (j + 1 < m_max) {
        T(j, j + 1) = T(j + 1, j) = next_beta;
        V.col(j + 1) = z / next_beta;
      }
    }
    double tau = remaining;
    for (int halving = 0;; ++halving) {
      const Vector y = small_expm_sym(T.topLeftCorner(m, m), tau, beta);
      const double err = breakdown ? 0.0 : next_beta * std::abs(y[m - 1]) * tau;
      if (err <= rel_tol * scale || halving >= 40) {
        w = V.leftCols(m) * y;
        remaining -= tau;
        break;
      }
      tau *= 0.5;
    }
  }
  return w;
}

PartialEigen lowest_eigenpairs(const SpMat& H, int n_pairs, double res_tol) {
  const Index n = H.rows();
  if (n_pairs < 1 || n_pairs > n)
    throw ConfigError("requested eigenpair count out of range");
  const double shift = 1e-3;
  SpMat A = H;
  for (Index i = 0; i < n; ++i) A.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<SpMat> solver(A);
  if (solver.info() != Eigen::Success)
    throw NumericError("sparse factorization for shift-invert failed");

  int m = std::min<Index>(std::max(2 * n_pairs + 40, 80), n);
  for (int attempt = 0; attempt < 3; ++attempt) {
    Matrix V(n, m);
    Matrix T = Matrix::Zero(m, m);
    // deterministic start vector
    Vector v0 = Vector::Ones(n);
    for (Index i = 0; i < n; ++i) v0[i] += 0.5 * std::sin(static_cast<double>(i) * 0.7);
    V.col(0) = v0 / v0.norm();
    int built = 0;
    for (int j = 0; j < m; ++j) {
      Vector z = solver.solve(V.col(j));
      const double alpha = V.col(j).dot(z);
      T(j, j) = alpha;
      z -= alpha * V.col(j);
      if (j > 0) z -= T(j, j - 1) * V.col(j - 1);
      for (int pass = 0; pass < 2; ++pass)
        z -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * z);
      const double beta = z.norm();
      built = j + 1;
      if (beta < 1e-14) break;
      if (j + 1 < m) {
        T(j, j + 1) = T(j + 1, j) = beta;
        V.col(j + 1) = z / beta;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(T.topLeftCorner(built, built));
    // largest theta of (H + shift)^-1 <-> smallest eigenvalues of H
    const int avail = std::min(n_pairs, built);
    PartialEigen out;
    out.values.resize(avail);
    out.vectors.resize(n, avail);
    bool converged = true;
    for (int k = 0; k < avail; ++k) {
      const int idx = built - 1 - k;  // descending theta
      const double theta = es.eigenvalues()[idx];
      const double lambda = 1.0 / theta - shift;
      Vector x = V.leftCols(built) * es.eigenvectors().col(idx);
      x.normalize();
      const double resid = (H * x - lambda * x).norm();
      if (resid > res_tol * std::max(1.0, std::abs(lambda))) converged = false;
      out.values[avail - 1 - k] = lambda;
      out.vectors.col(avail - 1 - k) = x;
    }
    if (converged && avail == n_pairs) return out;
    if (attempt == 2 && avail == n_pairs) {
      // accept with a hard residual re-check at a looser factor
      for (int k = 0; k < avail; ++k) {
        const double lambda = out.values[k];
        const double resid =
            (H * out.vectors.col(k) - lambda * out.vectors.col(k)).norm();
        if (resid > 100 * res_tol * std::max(1.0, std::abs(lambda)))
          throw NumericError("partial eigensolve failed to converge");
      }
      return out;
    }
    m = std::min<Index>(m + m / 2 + 20, n);
  }
  throw NumericError("partial eigensolve failed to converge");
}

Vector expm_apply(const SpMat& A, double t, const Vector& g, double rel_tol,
                  int max_krylov) {
  if (t < 0) throw ConfigError("expm time must be >= 0");
  if (t == 0 || g.norm() == 0) return g;
  const Index n = g.size();
  const int m_max = static_cast<int>(std::min<Index>(max_krylov, n));
  Vector w = g;
  double remaining = t;
  const double scale = g.norm();

  while (remaining > 1e-300) {
    const double beta = w.norm();
    if (beta == 0) return w;
    Matrix V(n, m_max + 1);
    Matrix Hm = Matrix::Zero(m_max + 1, m_max);
    V.col(0) = w / beta;
    int m = 0;
    bool breakdown = false;
    for (int j = 0; j < m_max; ++j) {
      Vector z = A * V.col(j);
      for (int i = 0; i <= j; ++i) {
        Hm(i, j) = V.col(i).dot(z);
        z -= Hm(i, j) * V.col(i);
      }
      // second orthogonalization pass
      for (int i = 0; i <= j; ++i) {
        const double corr = V.col(i).dot(z);
        Hm(i, j) += corr;
        z -= corr * V.col(i);
      }
      const double h = z.norm();
      m = j + 1;
      if (h < 1e-13 * scale) {
        breakdown = true;
        break;
      }
      Hm(j + 1, j) = h;
      V.col(j + 1) = z / h;
    }
    double tau = remaining;
    for (int halving = 0;; ++halving) {
      const Matrix E = (tau * Hm.topLeftCorner(m, m)).exp();
      const Vector y = E.col(0) * beta;
      const double err =
          breakdown ? 0.0 : Hm(m, m - 1) * std::abs(y[m - 1]) * tau;
      if (err <= rel_tol * scale || halving >= 40) {
        w = V.leftCols(m) * y;
        remaining -= tau;
        break;
      }
      tau *= 0.5;
    }
  }
  return w;
}

}  // namespace respf
