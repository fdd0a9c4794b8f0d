#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "respf/correlators.hpp"
#include "respf/types.hpp"

namespace respf {

/// Norms entering the remainder bounds. Supplied by the caller (analytic or
/// from grid quadrature) -- ||LV|| involves grad U and is deliberately not
/// estimable from subsystem data. NaN marks an absent optional norm.
struct NormBundle {
  double k_inf = nan_;
  double k_2 = nan_;
  double V_inf = nan_;  // optional; absent for unbounded tilts
  double V_2 = nan_;
  double LV_2 = nan_;
  // Hoelder pair (1/p + 1/q = 1), used when V_inf is unavailable.
  double p = nan_;
  double q = nan_;
  double k_2p = nan_;
  double V_2p = nan_;
  double LV_2q = nan_;

  static bool has(double x) { return x == x; }

 private:
  static constexpr double nan_ = std::numeric_limits<double>::quiet_NaN();
};

struct ResponseEstimate {
  double T = 0.0;
  double epsilon = 0.0;
  double order0 = 0.0;
  double order1 = 0.0;
  double order2 = 0.0;
  double prediction = 0.0;  // order0 + eps order1 + eps^2/2 order2
  double bound = 0.0;       // |f_V + f_k| bound on order2, 0 when not set
  double se_order1 = 0.0;
  double se_order2 = 0.0;
};

/// <Vk> - <V P_T k>; statistical errors combined in quadrature.
Estimate first_order(const CorrelatorSet& c);

/// <V^2 k> - <V P_T Vk> + <V>(<P_{T/2}k,V> - <kV>) + <k>(<P_{T/2}V,V> - <V^2>).
Estimate second_order_approx(const CorrelatorSet& c);

ResponseEstimate predict(const CorrelatorSet& c, double epsilon);

/// (||k||_inf ||V||_2 + ||V||_inf ||k||_2) ||LV||_2 (1/l)(e^{-lT/2}-e^{-lT}).
double error_bound(const NormBundle& n, double lambda_pi, double T);

/// Hoelder variant for unbounded tilts:
/// (||k||_{2p} ||V||_2 ||LV||_{2q} + ||V||_inf ||k||_2) ||LV||_2 (1/l)(...),
/// with ||V||_{2p} standing in for ||V||_inf when the latter is absent.
double error_bound_holder(const NormBundle& n, double lambda_pi, double T);

/// Closed-form constant of the two-timescale example's bound, 0 < r < 4.
double ou_constant(double r);

/// lambda_1 = -sqrt(2r^2 - 2r + 1) + r + 1 of the two-timescale matrix.
double ou_gap(double r);

/// T,order0,order1,order2,epsilon,prediction,bound,se1,se2 rows.
std::string response_csv(const std::vector<ResponseEstimate>& rows);

}  // namespace respf
