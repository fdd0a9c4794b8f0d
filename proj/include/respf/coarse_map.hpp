#pragma once

#include <vector>

#include "respf/types.hpp"

namespace respf {

/// Coarse-graining map pi: R^d -> R^m. Continuous dynamics use coordinate
/// projections; finite-state chains use label maps (see StatePartition in
/// chain.hpp, which is the label-map form).
struct CoarseMap {
  Index full_dim = 0;
  Index sub_dim = 0;
  std::vector<Index> indices;  // ordered, unique, in [0, full_dim)

  Vector apply(const Vector& x) const {
    Vector y(sub_dim);
    for (Index j = 0; j < sub_dim; ++j) y[j] = x[indices[static_cast<std::size_t>(j)]];
    return y;
  }

  static CoarseMap projection(Index d, std::vector<Index> idx);
  static CoarseMap identity(Index d);
  static CoarseMap first_coordinate(Index d) { return projection(d, {0}); }

  void validate() const;
};

}  // namespace respf
