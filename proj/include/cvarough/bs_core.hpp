#pragma once

namespace cvarough {

/// Evaluation point of the Black-Scholes call function B(s, x, zeta) with
/// log-strike kappa and maturity T, zero rates.
struct BsPoint {
  double s = 0.0;      ///< valuation time (years)
  double x = 0.0;      ///< log-spot
  double kappa = 0.0;  ///< log-strike
  double zeta = 0.0;   ///< volatility argument (per sqrt-year)
  double T = 0.0;      ///< maturity (years)

  /// zeta * sqrt(T - s)
  double total_vol() const;
};

struct DPlusMinus {
  double d_plus;
  double d_minus;
};

/// x-derivative combinations of B consumed by the CVA approximations.
struct BsDerivatives {
  double dx;          ///< ∂x B
  double l1;          ///< (∂xx - ∂x) B
  double dxxx_m_dxx;  ///< (∂xxx - ∂xx) B
  double l2;          ///< (∂xx - ∂x)^2 B
};

double norm_pdf(double x);
/// Standard normal CDF through erfc; accurate in both tails.
double norm_cdf(double x);

/// Throws std::domain_error when zeta * sqrt(T - s) == 0.
DPlusMinus d_plus_minus(const BsPoint& p);

/// e^x N(d+) - e^kappa N(d-); the intrinsic value (e^x - e^kappa)^+ when the
/// total volatility vanishes. Throws std::invalid_argument if T < s or zeta < 0.
double call_price(const BsPoint& p);

/// Throws std::domain_error when zeta * sqrt(T - s) == 0.
BsDerivatives call_derivatives(const BsPoint& p);

}  // namespace cvarough
