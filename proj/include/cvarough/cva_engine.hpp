#pragma once

#include "cvarough/affine_intensity.hpp"
#include "cvarough/rough_kernels.hpp"
#include "cvarough/vol_models.hpp"

#include <variant>

namespace cvarough {

/// Correlations of the price noise with the volatility noise (eta), the
/// intensity noise (rho), and of volatility with intensity (gamma).
struct CorrelationStructure {
  double eta = 0.0;
  double rho = 0.0;
  double gamma = 0.0;

  /// η², ρ², γ² < 1 and γ² + ρ² + η² < 1 + 2γηρ.
  bool admissible() const;
  /// Throws std::invalid_argument when not admissible.
  void validate() const;
};

/// Log-spot x, log-strike kappa, valuation time t, maturity T, recovery R.
struct ContractState {
  double x = 0.0;
  double kappa = 0.0;
  double t = 0.0;
  double T = 0.0;
  double recovery = 0.0;

  static ContractState from_prices(double spot, double strike, double t, double T, double recovery = 0.0);
  void validate() const;
};

using VolModelParams = std::variant<HestonParams, SabrParams, RBergomiParams>;

/// Term-by-term CVA approximation. total = (1 - R)(base + qvar_mm + skew_mx
/// + volint_nm + wwr_nx); the components are before the (1 - R) factor.
struct CvaBreakdown {
  double base = 0.0;       ///< (1 - N) B(t, x, vhat)
  double qvar_mm = 0.0;    ///< quadratic variation of the variance martingale
  double skew_mx = 0.0;    ///< price/vol covariation, proportional to eta
  double volint_nm = 0.0;  ///< intensity/vol covariation, proportional to gamma
  double wwr_nx = 0.0;     ///< intensity/price covariation, proportional to rho
  double total = 0.0;
  double survival = 0.0;   ///< N^t_t = E_t[exp(-∫_t^T λ)]
  double vhat = 0.0;       ///< variance swap volatility
};

/// Correlation-free parts of the approximation for one (model, intensity,
/// eta, contract). wwr_nx = rho * g_rho and volint_nm = gamma * g_gamma.
struct CvaSensitivities {
  double base = 0.0;
  double qvar_mm = 0.0;
  double skew_mx = 0.0;
  double g_rho = 0.0;
  double g_gamma = 0.0;
  double survival = 0.0;
  double vhat = 0.0;
  double recovery = 0.0;

  CvaBreakdown at(double rho, double gamma) const;
};

CvaSensitivities heston_cir_sensitivities(const HestonParams& h, const CirParams& c, double eta,
                                          const ContractState& k);
/// The SABR factor e^{-(1-β)X} is frozen at X_t and absorbed into σ_t.
CvaSensitivities sabr_cir_sensitivities(const SabrParams& s, const CirParams& c, double eta,
                                        const ContractState& k);
/// Only t = 0 is supported; throws std::invalid_argument otherwise.
CvaSensitivities rbergomi_cir_sensitivities(const RBergomiParams& r, const CirParams& c, double eta,
                                            const ContractState& k);
CvaSensitivities cva_sensitivities(const VolModelParams& model, const CirParams& c, double eta,
                                   const ContractState& k);

CvaBreakdown cva_heston_cir(const HestonParams& h, const CirParams& c, const CorrelationStructure& corr,
                            const ContractState& k);
CvaBreakdown cva_sabr_cir(const SabrParams& s, const CirParams& c, const CorrelationStructure& corr,
                          const ContractState& k);
CvaBreakdown cva_rbergomi_cir(const RBergomiParams& r, const CirParams& c, const CorrelationStructure& corr,
                              const ContractState& k);
CvaBreakdown cva_approx(const VolModelParams& model, const CirParams& c, const CorrelationStructure& corr,
                        const ContractState& k);

/// sqrt((1/(T-t)) ∫_t^T E_t[σ²_u] du); rough Bergomi uses a zero realized path integral.
double variance_swap_vol(const VolModelParams& model, double t, double T);

/// ∫_t^T (1 - e^{-k(T-s)})^n E_t[σ²_s] ds for n = 1, 2.
double heston_kernel_integral(const HestonParams& h, int n, double t, double T);

}  // namespace cvarough
