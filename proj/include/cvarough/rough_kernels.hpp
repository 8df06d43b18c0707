#pragma once

#include "cvarough/hypergeometric.hpp"

#include <optional>

namespace cvarough {

/// Rough Bergomi variance σ²_s = σ0² exp(ν sqrt(2H) Z_s - ν² s^{2H} / 2),
/// Z_s = ∫_0^s (s - ξ)^{H - 1/2} dB²_ξ.
struct RBergomiParams {
  double sigma0 = 0.0;  ///< initial spot volatility
  double nu = 0.0;      ///< vol-of-vol
  double H = 0.0;       ///< Hurst exponent in (0, 1/2]

  void validate() const;
};

enum class KernelMethod { quadrature, hypergeometric };

struct KernelMoment {
  double value = 0.0;
  KernelMethod method = KernelMethod::quadrature;
};

/// Primary quadrature value plus the hypergeometric closed form when it is
/// available for the arguments.
struct KernelEvaluation {
  KernelMoment quadrature;
  std::optional<KernelMoment> closed_form;

  double value() const { return quadrature.value; }
};

/// ∫_0^L x^a (x + d)^a dx for a > -1/2 and d >= 0, by quadrature.
double power_kernel_cross_integral(double a, double d, double L);

/// Cov(Z_{t1}, Z_{t2}) = ∫_0^{min} (t1 - ξ)^{H-1/2} (t2 - ξ)^{H-1/2} dξ by quadrature.
double rl_fbm_covariance(double H, double t1, double t2);

/// E_t[σ²_u] = σ0² exp((ν²/2)[(u-t)^{2H} - u^{2H}]) exp(z), where z is the
/// realized ν sqrt(2H) ∫_0^t (u - ξ)^{H-1/2} dB²_ξ (zero at t = 0).
double rb_forward_variance(const RBergomiParams& p, double t, double u, double z_path_integral);

/// Θ² = ∫_t^s [(u-ξ)^{H-1/2} + (s-ξ)^{H-1/2} / 2]² dξ, t <= s <= u.
KernelEvaluation theta_squared(double H, double t, double s, double u);
double theta_squared_quadrature(double H, double t, double s, double u);
double theta_squared_closed_form(double H, double t, double s, double u);

/// Φ² = ∫_t^s [(u-ξ)^{H-1/2} + (ϑ-ξ)^{H-1/2}]² dξ, t <= s <= min(u, ϑ).
KernelEvaluation phi_squared(double H, double t, double s, double u, double theta);
double phi_squared_quadrature(double H, double t, double s, double u, double theta);
/// Closed form; the arguments are ordered so the 2F1 argument is non-positive.
double phi_squared_closed_form(double H, double t, double s, double u, double theta);

/// E_t[σ_s] = σ0 exp(z) exp(-(ν²/4) s^{2H} + (ν²/8)(s-t)^{2H}), where z is the
/// realized (ν sqrt(2H)/2) ∫_0^t (s - ξ)^{H-1/2} dB²_ξ.
double rb_vol_mean(const RBergomiParams& p, double t, double s, double z_path_integral);

/// E_t[σ_s E_s(σ²_u)] for t <= s <= u; z is the realized combined kernel
/// integral ν sqrt(2H) ∫_0^t [(u-ξ)^{H-1/2} + (s-ξ)^{H-1/2}/2] dB²_ξ.
double rb_cross_moment(const RBergomiParams& p, double t, double s, double u, double z_path_integral);

/// σ0⁴ ∬_{[s,T]²} exp((ν²/2)[(u-s)^{2H} - u^{2H} + (ϑ-s)^{2H} - ϑ^{2H}])
///   (u-s)^{H-1/2} (ϑ-s)^{H-1/2} exp(ν² H Φ²(t,s,u,ϑ)) du dϑ,
/// i.e. E_t[(∫_s^T (u-s)^{H-1/2} E_s(σ²_u) du)²] along a path whose realized
/// kernel integral over [0, t] vanishes (exact at t = 0). Tensorized
/// Gauss-Jacobi quadrature with `nodes` points per axis.
double rb_mm_double_integral(const RBergomiParams& p, double t, double s, double T, int nodes = 24);

}  // namespace cvarough
