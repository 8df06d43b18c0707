#include "cvarough/affine_intensity.hpp"

#include "cvarough/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvarough {

void CirParams::validate() const {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("CirParams: lambda0 must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("CirParams: q must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("CirParams: mu must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("CirParams: c must be positive");
}

bool CirParams::satisfies_feller() const { return c * c < 2.0 * q * mu; }

void CirParams::require_feller() const {
  if (!satisfies_feller())
    throw std::invalid_argument("CirParams: Feller condition c^2 < 2 q mu violated (c^2 = " +
                                std::to_string(c * c) + ", 2 q mu = " +
                                std::to_string(2.0 * q * mu) + ")");
}

AffineBondCoefficients bond_coefficients(const CirParams& params, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("bond_coefficients: tau must be non-negative");
  const double q = params.q;
  const double c2 = params.c * params.c;
  const double p = std::sqrt(q * q + 2.0 * c2);
  const double p_minus_q = 2.0 * c2 / (p + q);

  // Everything is written in e^{-p tau} so nothing overflows.
  const double one_minus_e = -std::expm1(-p * tau);  // 1 - e^{-p tau}
  const double e = std::exp(-p * tau);
  const double denom = (p + q) + p_minus_q * e;
  const double phi = -2.0 * one_minus_e / denom;

  // ln[2p e^{(p+q)tau/2} / (p - q + (p+q) e^{p tau})]
  //   = -(p-q) tau / 2 - log1p(-(p-q)(1 - e^{-p tau}) / (2p))
  const double log_ratio = -0.5 * p_minus_q * tau - std::log1p(-p_minus_q * one_minus_e / (2.0 * p));
  const double psi = (2.0 * q * params.mu / c2) * log_ratio;
  return {p, phi, psi};
}

double survival_factor(const CirParams& params, double lambda_t, double tau) {
  if (!(lambda_t >= 0.0)) throw std::invalid_argument("survival_factor: lambda_t must be non-negative");
  const auto coeff = bond_coefficients(params, tau);
  return std::exp(coeff.phi * lambda_t + coeff.psi);
}

double sqrt_lambda_drift_integral(const CirParams& params, double lambda_t, double t, double s,
                                  double T) {
  if (!(lambda_t > 0.0))
    throw std::invalid_argument("sqrt_lambda_survival: lambda_t must be positive (g divides by it)");
  if (!(t <= s && s <= T)) throw std::invalid_argument("sqrt_lambda_survival: requires t <= s <= T");
  const double q = params.q;
  const double c2 = params.c * params.c;
  const double constant = (4.0 * q * params.mu - c2) / (8.0 * lambda_t) - 0.5 * q;
  auto phi_part = [&](double u) { return bond_coefficients(params, T - u).phi; };
  const double phi_integral = quad::adaptive(phi_part, t, s, 1e-13, 1e-12);
  return constant * (s - t) - 0.5 * c2 * phi_integral;
}

double sqrt_lambda_survival(const CirParams& params, double lambda_t, double t, double s,
                            double T) {
  const double drift = sqrt_lambda_drift_integral(params, lambda_t, t, s, T);
  return std::sqrt(lambda_t) * survival_factor(params, lambda_t, T - t) * std::exp(drift);
}

}  // namespace cvarough
