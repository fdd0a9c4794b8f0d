#include "respf/potential.hpp"

#include <cmath>
#include <numbers>

#include "respf/rng.hpp"

namespace respf {

Potential make_quadratic(const Matrix& A) {
  if (A.rows() != A.cols() || A.rows() < 1)
    throw ConfigError("quadratic form matrix must be square");
  if (!A.isApprox(A.transpose(), 1e-12))
    throw ConfigError("quadratic form matrix must be symmetric");
  Potential pot;
  pot.dim = A.rows();
  pot.kind = PotentialKind::QuadraticForm;
  pot.quadratic_matrix = A;
  pot.energy = [A](const Vector& x) { return 0.5 * x.dot(A * x); };
  pot.gradient = [A](const Vector& x) -> Vector { return A * x; };
  return pot;
}

Potential make_ou1d() {
  Matrix A(1, 1);
  A(0, 0) = 1.0;
  return make_quadratic(A);
}

Potential make_two_timescale(double r) {
  Matrix A(2, 2);
  A << 2.0, -r, -r, 2.0 * r;
  return make_quadratic(A);
}

Potential make_multiwell(const MultiwellParams& p) {
  const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
  Potential pot;
  pot.dim = 2;
  pot.kind = PotentialKind::Multiwell;
  pot.energy = [p, sqrt2pi](const Vector& z) {
    const double x = z[0], y = z[1];
    double u = -sqrt2pi / p.sigma * std::exp(-(y - 1) * (y - 1) / (2 * p.sigma));
    u += -sqrt2pi / p.sigma_m * std::exp(-(y + 1) * (y + 1) / (2 * p.sigma_m));
    u += -0.5 / p.sigma1 * std::exp(-(x - 1) * (x - 1) - (y - 1) * (y - 1));
    u += -0.5 / p.sigma1 * std::exp(-(x + 1) * (x + 1) - (y - 1) * (y - 1));
    u += -0.5 / p.sigma2 * std::exp(-(x + 1) * (x + 1) - (y + 1) * (y + 1));
    u += -0.5 / p.sigma2 * std::exp(-(x - 1) * (x - 1) - (y + 1) * (y + 1));
    u += (x * x + y * y) / 10.0;
    return u;
  };
  pot.gradient = [p, sqrt2pi](const Vector& z) -> Vector {
    const double x = z[0], y = z[1];
    Vector g = Vector::Zero(2);
    // channel terms depend on y only
    g[1] += sqrt2pi / p.sigma * std::exp(-(y - 1) * (y - 1) / (2 * p.sigma)) *
            (y - 1) / p.sigma;
    g[1] += sqrt2pi / p.sigma_m * std::exp(-(y + 1) * (y + 1) / (2 * p.sigma_m)) *
            (y + 1) / p.sigma_m;
    auto well = [&](double cx, double cy, double s) {
      const double e = std::exp(-(x - cx) * (x - cx) - (y - cy) * (y - cy));
      g[0] += (1.0 / s) * e * (x - cx);
      g[1] += (1.0 / s) * e * (y - cy);
    };
    well(1, 1, p.sigma1);
    well(-1, 1, p.sigma1);
    well(-1, -1, p.sigma2);
    well(1, -1, p.sigma2);
    g[0] += x / 5.0;
    g[1] += y / 5.0;
    return g;
  };
  return pot;
}

void check_gradient(const Potential& pot, std::uint64_t seed, int n_probes,
                    double rel_tol) {
  GaussianRng rng(seed);
  const double step = 1e-5;
  for (int probe = 0; probe < n_probes; ++probe) {
    const Vector x = rng.gauss_vector(pot.dim);
    const Vector g = pot.gradient(x);
    double scale = g.norm();
    if (scale < 1.0) scale = 1.0;
    for (Index i = 0; i < pot.dim; ++i) {
      Vector xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      const double fd = (pot.energy(xp) - pot.energy(xm)) / (2 * step);
      if (std::abs(fd - g[i]) > rel_tol * scale)
        throw NumericError("gradient mismatch vs finite differences at coordinate " +
                           std::to_string(i));
    }
  }
}

void check_confinement(const Potential& pot, double radius, int n_rays,
                       std::uint64_t seed) {
  GaussianRng rng(seed);
  const Vector origin = Vector::Zero(pot.dim);
  const double e0 = pot.energy(origin);
  for (int ray = 0; ray < n_rays; ++ray) {
    Vector u = rng.gauss_vector(pot.dim);
    if (u.norm() < 1e-12) u.setOnes();
    u.normalize();
    if (!(pot.energy(radius * u) > e0))
      throw NumericError("potential not confining along a probed ray");
  }
}

}  // namespace respf
