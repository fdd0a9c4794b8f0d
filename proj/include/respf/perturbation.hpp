#pragma once

#include <functional>

#include "respf/coarse_map.hpp"
#include "respf/types.hpp"

namespace respf {

/// Subsystem tilt potential v on R^m. The lifted potential is
/// V(x) = v(pi(x)) and the forcing direction is f = -grad V, so the
/// perturbed drift reads -grad U + eps * lift(grad v(pi(x))).
struct Perturbation {
  Index sub_dim = 0;
  std::function<double(const Vector&)> v;
  std::function<Vector(const Vector&)> grad_v;

  double lifted(const CoarseMap& cmap, const Vector& x) const {
    return v(cmap.apply(x));
  }
};

/// v(y) = -cos(y_1 - pi/4).
Perturbation make_cosine_tilt(Index m = 1);

/// v(y) = exp(-(y_1 - 1)^2 / 4).
Perturbation make_gaussian_tilt(Index m = 1);

/// v identically zero.
Perturbation make_zero_perturbation(Index m = 1);

/// v(y) = y_1 (linear tilt).
Perturbation make_linear_tilt(Index m = 1);

/// grad_v must match central finite differences of v within rel_tol.
void check_perturbation_gradient(const Perturbation& pert,
                                 std::uint64_t seed = 0, int n_probes = 16,
                                 double rel_tol = 1e-6);

}  // namespace respf
