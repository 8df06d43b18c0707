#pragma once

namespace cvarough {

/// CIR default intensity dλ = q(μ - λ)ds + c sqrt(λ) dW.
struct CirParams {
  double lambda0 = 0.0;  ///< initial intensity (1/year)
  double q = 0.0;        ///< mean-reversion speed (1/year)
  double mu = 0.0;       ///< long-run mean (1/year)
  double c = 0.0;        ///< vol-of-intensity (1/sqrt-year)

  /// Positivity of all parameters; throws std::invalid_argument.
  void validate() const;
  /// c^2 < 2 q mu
  bool satisfies_feller() const;
  /// Throws std::invalid_argument when the Feller condition fails.
  void require_feller() const;
};

/// Bond coefficients of the affine transform E[exp(-∫λ)] = exp(phi λ + psi).
struct AffineBondCoefficients {
  double p;    ///< sqrt(q^2 + 2 c^2)
  double phi;  ///< phi(tau) <= 0
  double psi;  ///< psi(tau) <= 0
};

/// phi(tau), psi(tau) in closed form, evaluated in a form that is stable for
/// large p * tau and for c -> 0.
AffineBondCoefficients bond_coefficients(const CirParams& params, double tau);

/// exp(phi(tau) λ_t + psi(tau)) = E_t[exp(-∫_t^{t+tau} λ du)].
double survival_factor(const CirParams& params, double lambda_t, double tau);

/// ∫_t^s g(u) du with g(u) = (4qμ - c²)/(8λ_t) - (q + c² phi(T - u))/2.
double sqrt_lambda_drift_integral(const CirParams& params, double lambda_t, double t, double s,
                                  double T);

/// Approximation of E_t[N^t_s sqrt(λ_s)] obtained by freezing 1/λ at λ_t:
/// sqrt(λ_t) N^t_t exp(∫_t^s g(u) du). Throws std::invalid_argument for λ_t <= 0
/// or an ordering violation of t <= s <= T.
double sqrt_lambda_survival(const CirParams& params, double lambda_t, double t, double s,
                            double T);

}  // namespace cvarough
