#pragma once

#include <array>
#include <memory>

#include "respf/coarse_map.hpp"
#include "respf/perturbation.hpp"
#include "respf/potential.hpp"
#include "respf/types.hpp"

namespace respf {

/// Uniform cell-centered grid on a box in 1 or 2 dimensions.
struct GridSpec {
  int dims = 1;
  std::array<double, 2> lo{-8.0, -8.0};
  std::array<double, 2> hi{8.0, 8.0};
  std::array<Index, 2> n{512, 1};
  double tail_tol = 1e-6;  // admissible boundary-layer mass

  Index total_points() const { return dims == 1 ? n[0] : n[0] * n[1]; }
  double h(int axis) const {
    return (hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]) /
           static_cast<double>(n[static_cast<std::size_t>(axis)]);
  }
  /// Cell-center coordinate along an axis.
  double coord(int axis, Index i) const {
    return lo[static_cast<std::size_t>(axis)] + (static_cast<double>(i) + 0.5) * h(axis);
  }
  void validate() const;

  static GridSpec line(double lo, double hi, Index n);
  static GridSpec box(double lox, double hix, Index nx, double loy, double hiy,
                      Index ny);
};

/// Finite-difference generator on the grid. L0 discretizes
/// -grad U . grad + Laplace with zero-flux boundaries; the edge weights are
/// geometric means of e^{-U}, so L0 is exactly reversible for the discrete
/// Gibbs weights mu. B is the derivative of the same discretization of
/// U - eps V at eps = 0; it discretizes grad V . grad and satisfies the
/// discrete integration-by-parts identity <B g>_mu = -<V, L0 g>_mu exactly.
class GridOperator {
 public:
  GridSpec spec;
  SpMat L0;
  SpMat B;
  Vector mu;       // normalized Gibbs weights
  Vector sqrt_mu;
  Vector V;        // lifted tilt v(pi(x)) on the grid
  Vector U;        // energy on the grid
  std::vector<int> projection_labels(int axis) const;  // cells sharing a coordinate

  Index size() const { return mu.size(); }
  Vector coordinate(int axis) const;  // flattened coordinate values

  double mean(const Vector& f) const { return mu.dot(f); }
  double inner(const Vector& f, const Vector& g) const {
    return (mu.array() * f.array() * g.array()).sum();
  }
  double norm2(const Vector& f) const { return std::sqrt(inner(f, f)); }
  /// L^p(mu) norm by weighted sums; p = inf handled by quadrature_norms.
  double norm_p(const Vector& f, double p) const;

  /// Symmetrized positive semidefinite form H = -D^{1/2} L0 D^{-1/2}.
  const SpMat& symmetrized() const;
  /// Dense spectral factorization of H, cached; available for
  /// size() <= dense_limit (used for exact 1D semigroups).
  struct DenseSpectrum {
    Vector eigenvalues;  // of -L0, ascending
    Matrix eigenvectors; // orthonormal columns (symmetrized coordinates)
  };
  const DenseSpectrum& dense_spectrum() const;
  bool dense_path() const { return size() <= dense_limit; }
  static constexpr Index dense_limit = 2200;

 private:
  mutable std::shared_ptr<const SpMat> H_;
  mutable std::shared_ptr<const DenseSpectrum> dense_;
};

/// Assemble the grid operator. The stationary tails outside the box must be
/// negligible: the boundary-layer mass is checked against spec.tail_tol.
GridOperator discretize(const Potential& pot, const Perturbation& pert,
                        const CoarseMap& cmap, const GridSpec& spec);

/// Evaluate a full-space function on every grid cell center.
Vector grid_eval(const GridSpec& spec,
                 const std::function<double(const Vector&)>& f);

}  // namespace respf
