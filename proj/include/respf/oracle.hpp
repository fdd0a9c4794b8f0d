#pragma once

#include <functional>
#include <string>
#include <vector>

#include "respf/chain.hpp"
#include "respf/grid.hpp"
#include "respf/response.hpp"
#include "respf/types.hpp"

namespace respf {

/// e^{t(L0 + eps B)} g. The eps = 0 path uses the symmetric spectral
/// factorization (dense, exact) or Lanczos stepping (sparse); eps != 0 uses
/// dense scaling-and-squaring or Arnoldi stepping.
Vector propagate(const GridOperator& op, double epsilon, double t,
                 const Vector& g);

/// P_{j delta} f for j = 0..nsteps, exact per node on the dense path and by
/// incremental Lanczos steps on the sparse path.
std::vector<Vector> semigroup_sweep(const GridOperator& op, double delta,
                                    int nsteps, const Vector& f);

/// L2(mu) norm of P^{eps}_{0,T} g - P^0_T g - eps Int_0^T P^0_s(B P^{eps}_{s,T} g) ds
/// with Simpson quadrature in s (node count = intervals+1, intervals even,
/// >= 32). The identity is exact, so the residual is quadrature error.
double dyson_residual(const GridOperator& op, double epsilon, double T,
                      const Vector& g, int intervals = 32);

struct FdDerivatives {
  double d1 = 0.0;
  double d2 = 0.0;
  double richardson_d1 = 0.0;  // |coarse - fine| disagreement
  double richardson_d2 = 0.0;
};

/// Central finite differences of F(eps) = <P^{eps}_T kappa>_mu at step
/// fd_step with Richardson refinement at fd_step/2. Richardson disagreement
/// beyond 1e-4 relative raises NumericError (step-size failure).
FdDerivatives response_derivatives_fd(const GridOperator& op, double T,
                                      const Vector& kappa,
                                      double fd_step = 1e-3);

/// <V^2 k> - <V P_T(Vk)> + Int_0^T <V P_t(L0 V . P_{T-t} k)> dt, the time
/// integral by Simpson over [0,T/2] and [T/2,T] with intervals_half
/// intervals each (even, >= 16 per half; 32 nodes total minimum).
double exact_second_order(const GridOperator& op, double T, const Vector& kappa,
                          int intervals_half = 32);

/// Same four-term subsystem formula the estimator uses, evaluated with grid
/// semigroups (no statistics).
double second_order_approx_grid(const GridOperator& op, double T,
                                const Vector& kappa);

struct Remainders {
  double f_V = 0.0;
  double f_k = 0.0;
};

/// f_V = Int_0^{T/2} <(P_{T-t}V - <V>)(P_t k) L0V> dt and
/// f_k = Int_{T/2}^T <(P_t k - <k>)(P_{T-t}V) L0V> dt, Simpson per half.
Remainders remainder_terms(const GridOperator& op, double T,
                           const Vector& kappa, int intervals_half = 32);

/// First and second order response for a general bounded protocol h_t:
///   d1 = -Int_0^T h_t <V L0 P_{T-t} k> dt
///   d2 = -2 Int_0^T Int_0^{t1} h_{t1} h_{t2} <(L0 V) P_{t1-t2}(B P_{T-t1} k)> dt2 dt1
/// (nested Simpson; h == 1 must reproduce the simplified forms).
std::pair<double, double> general_protocol_response(
    const GridOperator& op, const std::function<double(double)>& h, double T,
    const Vector& kappa, int intervals = 32);

/// L^p(mu) norms of kappa, V and L0 V by weighted sums (L^inf by grid max);
/// Hoelder exponents fixed at p = q = 2.
NormBundle quadrature_norms(const GridOperator& op, const Vector& kappa);

/// Subsystem spectral gap of the grid operator for the coordinate-projection
/// partition along `axis`, from the lowest n_pairs eigenpairs.
SubsystemGapResult grid_subsystem_gap(const GridOperator& op, int axis,
                                      double tol = 1e-9, int n_pairs = 50);

/// One row per horizon of the oracle cross-check suite:
/// T,d1_fd,d1_lemma,d2_fd,d2_exact,d2_approx,fV,fk,bound.
struct OracleReportRow {
  double T, d1_fd, d1_lemma, d2_fd, d2_exact, d2_approx, f_V, f_k, bound;
};
std::string oracle_report_csv(const std::vector<OracleReportRow>& rows);

}  // namespace respf
