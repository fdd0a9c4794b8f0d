#include "respf/response.hpp"

#include <cmath>
#include <sstream>

#include "respf/csv.hpp"

namespace respf {

namespace {

double quad(double a, double b) { return std::sqrt(a * a + b * b); }

/// (1/lambda)(e^{-lambda T/2} - e^{-lambda T}); nonnegative for T >= 0.
double gap_factor(double lambda_pi, double T) {
  if (!(lambda_pi > 0)) throw ConfigError("subsystem gap must be positive");
  if (T < 0) throw ConfigError("horizon must be >= 0");
  return (std::exp(-lambda_pi * T / 2) - std::exp(-lambda_pi * T)) / lambda_pi;
}

}  // namespace

Estimate first_order(const CorrelatorSet& c) {
  Estimate e;
  e.value = c.mean_Vk.value - c.lag_V_k_T.value;
  e.se = quad(c.mean_Vk.se, c.lag_V_k_T.se);
  return e;
}

Estimate second_order_approx(const CorrelatorSet& c) {
  Estimate e;
  e.value = c.mean_V2k.value - c.lag_V_Vk_T.value +
            c.mean_V.value * (c.lag_V_k_halfT.value - c.mean_Vk.value) +
            c.mean_k.value * (c.lag_V_V_halfT.value - c.mean_V2.value);
  // quadrature over the correlator errors, cross-covariances ignored
  // (conservative); the products propagate the factor magnitudes.
  const double sV = std::abs(c.mean_V.value);
  const double sk = std::abs(c.mean_k.value);
  e.se = quad(quad(c.mean_V2k.se, c.lag_V_Vk_T.se),
              quad(sV * quad(c.lag_V_k_halfT.se, c.mean_Vk.se),
                   sk * quad(c.lag_V_V_halfT.se, c.mean_V2.se)));
  return e;
}

ResponseEstimate predict(const CorrelatorSet& c, double epsilon) {
  const Estimate o1 = first_order(c);
  const Estimate o2 = second_order_approx(c);
  ResponseEstimate r;
  r.T = c.T;
  r.epsilon = epsilon;
  r.order0 = c.mean_k.value;
  r.order1 = o1.value;
  r.order2 = o2.value;
  r.se_order1 = o1.se;
  r.se_order2 = o2.se;
  r.prediction = r.order0 + epsilon * r.order1 + 0.5 * epsilon * epsilon * r.order2;
  return r;
}

double error_bound(const NormBundle& n, double lambda_pi, double T) {
  if (!NormBundle::has(n.V_inf))
    throw ConfigError("V_inf missing: use error_bound_holder for unbounded tilts");
  if (!(NormBundle::has(n.k_inf) && NormBundle::has(n.k_2) &&
        NormBundle::has(n.V_2) && NormBundle::has(n.LV_2)))
    throw ConfigError("norm bundle incomplete");
  return (n.k_inf * n.V_2 + n.V_inf * n.k_2) * n.LV_2 * gap_factor(lambda_pi, T);
}

double error_bound_holder(const NormBundle& n, double lambda_pi, double T) {
  if (!(NormBundle::has(n.p) && NormBundle::has(n.q)) ||
      !(n.p > 1 && n.q > 1) || std::abs(1.0 / n.p + 1.0 / n.q - 1.0) > 1e-12)
    throw ConfigError("invalid Hoelder pair (need 1/p + 1/q = 1, p,q > 1)");
  if (!(NormBundle::has(n.k_2p) && NormBundle::has(n.V_2) &&
        NormBundle::has(n.LV_2q) && NormBundle::has(n.k_2) &&
        NormBundle::has(n.LV_2)))
    throw ConfigError("norm bundle incomplete for Hoelder bound");
  const double v_factor = NormBundle::has(n.V_inf) ? n.V_inf : n.V_2p;
  if (!NormBundle::has(v_factor))
    throw ConfigError("need V_inf or V_2p for the Hoelder bound");
  return (n.k_2p * n.V_2 * n.LV_2q + v_factor * n.k_2) * n.LV_2 *
         gap_factor(lambda_pi, T);
}

double ou_constant(double r) {
  if (!(r > 0 && r < 4)) throw ConfigError("ou_constant needs 0 < r < 4 (4r - r^2 > 0)");
  const double first = std::pow(3.0 * std::pow(2.0 * r / (4.0 - r), 2), 0.25) *
                       std::pow(3.0 / std::pow(4.0 * r - r * r, 2) *
                                    (64 * std::pow(r, 2) + 32 * std::pow(r, 3) +
                                     20 * std::pow(r, 4) - 8 * std::pow(r, 5)),
                                0.25);
  const double second =
      2.0 / std::sqrt(4.0 - r) * std::sqrt((2.0 * r + 4.0) / (4.0 - r));
  return first + second;
}

double ou_gap(double r) {
  return -std::sqrt(2 * r * r - 2 * r + 1) + r + 1;
}

std::string response_csv(const std::vector<ResponseEstimate>& rows) {
  std::ostringstream out;
  out << "T,order0,order1,order2,epsilon,prediction,bound,se1,se2\n";
  for (const auto& r : rows) {
    out << format_g17(r.T) << ',' << format_g17(r.order0) << ','
        << format_g17(r.order1) << ',' << format_g17(r.order2) << ','
        << format_g17(r.epsilon) << ',' << format_g17(r.prediction) << ','
        << format_g17(r.bound) << ',' << format_g17(r.se_order1) << ','
        << format_g17(r.se_order2) << "\n";
  }
  return out.str();
}

}  // namespace respf
