#include "cvarough/bs_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvarough {

namespace {

void check_point(const BsPoint& p) {
  if (!(p.T - p.s >= 0.0)) throw std::invalid_argument("BsPoint: requires T - s >= 0");
  if (!(p.zeta >= 0.0)) throw std::invalid_argument("BsPoint: requires zeta >= 0");
}

double checked_total_vol(const BsPoint& p) {
  check_point(p);
  const double v = p.total_vol();
  if (v == 0.0) throw std::domain_error("Black-Scholes derivative: zeta * sqrt(T - s) is zero");
  return v;
}

}  // namespace

double BsPoint::total_vol() const { return zeta * std::sqrt(T - s); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * (0.5 * std::numbers::sqrt2)); }

DPlusMinus d_plus_minus(const BsPoint& p) {
  const double v = checked_total_vol(p);
  const double m = p.x - p.kappa;
  return {(m + 0.5 * v * v) / v, (m - 0.5 * v * v) / v};
}

double call_price(const BsPoint& p) {
  check_point(p);
  const double v = p.total_vol();
  if (v == 0.0) return std::max(std::exp(p.x) - std::exp(p.kappa), 0.0);
  const auto d = d_plus_minus(p);
  return std::exp(p.x) * norm_cdf(d.d_plus) - std::exp(p.kappa) * norm_cdf(d.d_minus);
}

BsDerivatives call_derivatives(const BsPoint& p) {
  const double v = checked_total_vol(p);
  const double dp = d_plus_minus(p).d_plus;
  const double ex = std::exp(p.x);
  const double density = ex * norm_pdf(dp);

  BsDerivatives out{};
  out.dx = ex * norm_cdf(dp);
  out.l1 = density / v;
  out.dxxx_m_dxx = out.l1 * (1.0 - dp / v);
  out.l2 = density * (dp * dp - dp * v - 1.0) / (v * v * v);
  return out;
}

}  // namespace cvarough
