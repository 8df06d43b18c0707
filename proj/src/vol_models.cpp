#include "cvarough/vol_models.hpp"

#include <cmath>
#include <stdexcept>

namespace cvarough {

void HestonParams::validate() const {
  if (!(sigma2_0 > 0.0 && k > 0.0 && theta > 0.0 && nu > 0.0))
    throw std::invalid_argument("HestonParams: sigma2_0, k, theta, nu must be positive");
  if (!(2.0 * k * theta > nu * nu))
    throw std::invalid_argument("HestonParams: Feller condition 2 k theta > nu^2 violated");
}

void SabrParams::validate() const {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("SabrParams: sigma0 must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("SabrParams: beta must lie in [0, 1]");
  if (!std::isfinite(alpha)) throw std::invalid_argument("SabrParams: alpha must be finite");
}

double heston_variance_mean(const HestonParams& p, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("heston_variance_mean: dt must be non-negative");
  return p.theta + (p.sigma2_0 - p.theta) * std::exp(-p.k * dt);
}

double heston_variance_variance(const HestonParams& p, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("heston_variance_variance: dt must be non-negative");
  const double e1 = std::exp(-p.k * dt);
  const double nu2_k = p.nu * p.nu / p.k;
  const double one_minus = -std::expm1(-p.k * dt);
  return p.sigma2_0 * nu2_k * (e1 - e1 * e1) + 0.5 * p.theta * nu2_k * one_minus * one_minus;
}

double heston_variance_swap(const HestonParams& p, double t, double T) {
  if (!(T > t)) throw std::invalid_argument("heston_variance_swap: requires T > t");
  const double kd = p.k * (T - t);
  // (1 - e^{-x}) / x, series near zero
  const double ratio = kd < 1e-8 ? 1.0 - 0.5 * kd : -std::expm1(-kd) / kd;
  return std::sqrt(p.theta + (p.sigma2_0 - p.theta) * ratio);
}

double heston_vol_mean(const HestonParams& p, double dt) {
  const double m1 = heston_variance_mean(p, dt);
  const double m2 = m1 * m1 + heston_variance_variance(p, dt);
  return std::sqrt(m1) * std::pow(m2 / (m1 * m1), -0.125);
}

double sabr_vol_moment(const SabrParams& p, int n, double dt) {
  if (n < 1 || n > 4) throw std::invalid_argument("sabr_vol_moment: n must be 1, 2, 3 or 4");
  if (!(dt >= 0.0)) throw std::invalid_argument("sabr_vol_moment: dt must be non-negative");
  const double nn = static_cast<double>(n);
  return std::pow(p.sigma0, nn) * std::exp(0.5 * nn * (nn - 1.0) * p.alpha * p.alpha * dt);
}

double sabr_variance_swap(const SabrParams& p, double t, double T) {
  if (!(T > t)) throw std::invalid_argument("sabr_variance_swap: requires T > t");
  const double x = p.alpha * p.alpha * (T - t);
  const double ratio = x < 1e-12 ? 1.0 + 0.5 * x : std::expm1(x) / x;
  return p.sigma0 * std::sqrt(ratio);
}

}  // namespace cvarough
