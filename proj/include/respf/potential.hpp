#pragma once

#include <functional>
#include <optional>

#include "respf/types.hpp"

namespace respf {

enum class PotentialKind { QuadraticForm, Multiwell, GaussianSum, Custom };

/// Scalar energy U on R^d (k_B T units) with its gradient. The equilibrium
/// density is e^{-U}/Z on the truncated domains used downstream.
struct Potential {
  Index dim = 0;
  PotentialKind kind = PotentialKind::Custom;
  std::function<double(const Vector&)> energy;
  std::function<Vector(const Vector&)> gradient;
  /// Set for QuadraticForm (U = x'Ax/2); enables exact Gaussian equilibrium
  /// draws and Lyapunov-based diagnostics.
  std::optional<Matrix> quadratic_matrix;
};

/// U = x'Ax/2 for symmetric positive definite A.
Potential make_quadratic(const Matrix& A);

/// 1D U = x^2/2.
Potential make_ou1d();

/// The two-timescale 2D quadratic form, A = [[2,-r],[-r,2r]].
Potential make_two_timescale(double r);

struct MultiwellParams {
  double sigma = 0.5;
  double sigma_m = 1.0 / 3.0;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
};

/// Four-well 2D landscape: two Gaussian channels along y = +-1, four wells
/// at (+-1, +-1), harmonic confinement (x^2+y^2)/10.
Potential make_multiwell(const MultiwellParams& p = {});

/// Gradient must match central finite differences (step 1e-5) within
/// `rel_tol` relative error at `n_probes` random points.
void check_gradient(const Potential& pot, std::uint64_t seed = 0,
                    int n_probes = 16, double rel_tol = 1e-6);

/// Confinement probe: energy(R u) > energy(0) along random unit rays.
void check_confinement(const Potential& pot, double radius = 100.0,
                       int n_rays = 8, std::uint64_t seed = 0);

}  // namespace respf
