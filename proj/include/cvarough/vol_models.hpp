#pragma once

namespace cvarough {

/// Heston variance dσ² = k(θ - σ²)ds + ν σ dB².
struct HestonParams {
  double sigma2_0 = 0.0;  ///< current variance σ²_t
  double k = 0.0;         ///< mean reversion
  double theta = 0.0;     ///< long-run variance
  double nu = 0.0;        ///< vol-of-vol

  /// Positivity and the Feller condition 2kθ > ν².
  void validate() const;
};

/// SABR volatility dσ = α σ dB², price dynamics with exponent β.
struct SabrParams {
  double sigma0 = 0.0;  ///< current volatility σ_t
  double alpha = 0.0;   ///< vol-of-vol
  double beta = 1.0;    ///< CEV exponent in [0, 1]

  void validate() const;
};

/// E_t[σ²_{t+dt}] = θ + (σ²_t - θ) e^{-k dt}
double heston_variance_mean(const HestonParams& p, double dt);

/// Var_t[σ²_{t+dt}] of the square-root variance process.
double heston_variance_variance(const HestonParams& p, double dt);

/// Zero-strike variance swap volatility sqrt((1/(T-t)) ∫_t^T E_t[σ²_u] du).
double heston_variance_swap(const HestonParams& p, double t, double T);

/// E_t[σ_{t+dt}] from a lognormal law matched to the first two moments of σ²:
/// sqrt(m1) (m2 / m1²)^{-1/8}.
double heston_vol_mean(const HestonParams& p, double dt);

/// E_t[σⁿ_{t+dt}] = σ_tⁿ exp(n(n-1) α² dt / 2), n in {1, 2, 3, 4}.
double sabr_vol_moment(const SabrParams& p, int n, double dt);

/// sqrt(σ_t² (e^{α²(T-t)} - 1) / (α²(T-t))), σ_t in the α -> 0 limit.
double sabr_variance_swap(const SabrParams& p, double t, double T);

}  // namespace cvarough
