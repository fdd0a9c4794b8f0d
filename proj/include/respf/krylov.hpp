#pragma once

#include "respf/types.hpp"

namespace respf {

/// w = e^{-tH} g for symmetric positive semidefinite sparse H, by Lanczos
/// projection with full reorthogonalization and adaptive substepping.
/// rel_tol controls the a-posteriori step error estimate.
Vector expm_symmetric_apply(const SpMat& H, double t, const Vector& g,
                            double rel_tol = 1e-12, int max_krylov = 60);

struct PartialEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns
};

/// Lowest n_pairs eigenpairs of a symmetric PSD sparse matrix by
/// shift-invert Lanczos (sparse LDLT factorization at a small negative
/// shift). Residuals ||Hx - lambda x|| are verified against res_tol.
PartialEigen lowest_eigenpairs(const SpMat& H, int n_pairs,
                               double res_tol = 1e-9);

/// w = e^{tA} g for a general sparse A (nonsymmetric), by Arnoldi projection
/// with adaptive substepping.
Vector expm_apply(const SpMat& A, double t, const Vector& g,
                  double rel_tol = 1e-10, int max_krylov = 60);

}  // namespace respf
