#include "cvarough/rough_kernels.hpp"

#include "cvarough/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cvarough {

namespace {

constexpr double kRelTol = 1e-13;
constexpr std::size_t kJacobiNodes = 32;

const quad::Rule& jacobi_rule(double a) {
  thread_local std::map<double, quad::Rule> cache;
  auto it = cache.find(a);
  if (it == cache.end()) it = cache.emplace(a, quad::gauss_jacobi(kJacobiNodes, 0.0, a)).first;
  return it->second;
}

// ((p - t)^{2H} - (p - s)^{2H}) / (2H) = ∫_t^s (p - ξ)^{2H-1} dξ
double power_square_integral(double H, double t, double s, double p) {
  return (std::pow(p - t, 2.0 * H) - std::pow(p - s, 2.0 * H)) / (2.0 * H);
}

void check_hurst(double H) {
  if (!(H > 0.0 && H <= 0.5)) throw std::invalid_argument("Hurst exponent must lie in (0, 1/2]");
}

}  // namespace

void RBergomiParams::validate() const {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("RBergomiParams: sigma0 must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("RBergomiParams: nu must be positive");
  check_hurst(H);
}

double power_kernel_cross_integral(double a, double d, double L) {
  if (!(a > -0.5)) throw std::invalid_argument("power_kernel_cross_integral: exponent must exceed -1/2");
  if (!(d >= 0.0)) throw std::invalid_argument("power_kernel_cross_integral: d must be non-negative");
  if (L <= 0.0) return 0.0;
  if (d == 0.0) return std::pow(L, 2.0 * a + 1.0) / (2.0 * a + 1.0);

  // [0, min(d, L)]: (x + d)^a is analytic there, x^a goes into the Jacobi weight.
  const double m = std::min(d, L);
  double sum = quad::left_singular([&](double x) { return std::pow(x + d, a); }, 0.0, m, a, jacobi_rule(a));
  // [d, L]: logarithmic variable, both factors smooth in v.
  if (L > d) {
    auto g = [&](double v) {
      const double x = std::exp(v);
      return std::pow(x, a + 1.0) * std::pow(x + d, a);
    };
    sum += quad::adaptive(g, std::log(d), std::log(L), 0.0, kRelTol);
  }
  return sum;
}

double rl_fbm_covariance(double H, double t1, double t2) {
  check_hurst(H);
  if (!(t1 >= 0.0 && t2 >= 0.0)) throw std::invalid_argument("rl_fbm_covariance: times must be non-negative");
  const double lo = std::min(t1, t2);
  const double hi = std::max(t1, t2);
  return power_kernel_cross_integral(H - 0.5, hi - lo, lo);
}

double rb_forward_variance(const RBergomiParams& p, double t, double u, double z_path_integral) {
  if (!(t >= 0.0 && u >= t)) throw std::invalid_argument("rb_forward_variance: requires 0 <= t <= u");
  const double h2 = 2.0 * p.H;
  return p.sigma0 * p.sigma0 *
         std::exp(0.5 * p.nu * p.nu * (std::pow(u - t, h2) - std::pow(u, h2)) + z_path_integral);
}

double theta_squared_quadrature(double H, double t, double s, double u) {
  check_hurst(H);
  if (!(t <= s && s <= u)) throw std::invalid_argument("theta_squared: requires t <= s <= u");
  // Squares are elementary; the cross term ∫_0^{s-t} x^a (x + u - s)^a dx by quadrature.
  const double squares = power_square_integral(H, t, s, u) + std::pow(s - t, 2.0 * H) / (8.0 * H);
  return squares + power_kernel_cross_integral(H - 0.5, u - s, s - t);
}

double theta_squared_closed_form(double H, double t, double s, double u) {
  check_hurst(H);
  if (!(t <= s && s <= u)) throw std::invalid_argument("theta_squared: requires t <= s <= u");
  const double L = s - t;
  const double D = u - s;
  const double squares = power_square_integral(H, t, s, u) + std::pow(L, 2.0 * H) / (8.0 * H);
  if (L == 0.0) return squares;
  double cross;
  if (D == 0.0) {
    cross = std::pow(L, 2.0 * H) / (2.0 * H);
  } else {
    cross = std::pow(D, H - 0.5) * std::pow(L, H + 0.5) / (H + 0.5) *
            gauss_2f1(0.5 - H, H + 0.5, H + 1.5, -L / D);
  }
  return squares + cross;
}

KernelEvaluation theta_squared(double H, double t, double s, double u) {
  KernelEvaluation out;
  out.quadrature = {theta_squared_quadrature(H, t, s, u), KernelMethod::quadrature};
  try {
    out.closed_form = KernelMoment{theta_squared_closed_form(H, t, s, u), KernelMethod::hypergeometric};
  } catch (const std::domain_error&) {
    out.closed_form.reset();
  }
  return out;
}

double phi_squared_quadrature(double H, double t, double s, double u, double theta) {
  check_hurst(H);
  const double m = std::min(u, theta);
  if (!(t <= s && s <= m)) throw std::invalid_argument("phi_squared: requires t <= s <= min(u, theta)");
  const double a = H - 0.5;
  const double d = std::abs(u - theta);
  const double squares = power_square_integral(H, t, s, u) + power_square_integral(H, t, s, theta);
  // x = min(u, ϑ) - ξ runs over [m - s, m - t]
  const double cross = power_kernel_cross_integral(a, d, m - t) - power_kernel_cross_integral(a, d, m - s);
  return squares + 2.0 * cross;
}

double phi_squared_closed_form(double H, double t, double s, double u, double theta) {
  check_hurst(H);
  if (u > theta) std::swap(u, theta);
  if (!(t <= s && s <= u)) throw std::invalid_argument("phi_squared: requires t <= s <= min(u, theta)");
  const double squares = power_square_integral(H, t, s, u) + power_square_integral(H, t, s, theta);
  if (s == t) return squares;
  if (u == theta) return 2.0 * squares;

  // Antiderivative of x^a (x + d)^a, x = u - ξ, d = ϑ - u > 0.
  const double a = H - 0.5;
  const double d = theta - u;
  auto antiderivative = [&](double x) {
    if (x == 0.0) return 0.0;
    return std::pow(x, a + 1.0) * std::pow(x + d, a + 1.0) *
           gauss_2f1(1.0, 2.0 * a + 2.0, a + 2.0, -x / d) / ((a + 1.0) * d);
  };
  const double cross = antiderivative(u - t) - antiderivative(u - s);
  return squares + 2.0 * cross;
}

KernelEvaluation phi_squared(double H, double t, double s, double u, double theta) {
  KernelEvaluation out;
  out.quadrature = {phi_squared_quadrature(H, t, s, u, theta), KernelMethod::quadrature};
  try {
    out.closed_form = KernelMoment{phi_squared_closed_form(H, t, s, u, theta), KernelMethod::hypergeometric};
  } catch (const std::domain_error&) {
    out.closed_form.reset();
  }
  return out;
}

double rb_vol_mean(const RBergomiParams& p, double t, double s, double z_path_integral) {
  if (!(t >= 0.0 && s >= t)) throw std::invalid_argument("rb_vol_mean: requires 0 <= t <= s");
  const double h2 = 2.0 * p.H;
  const double nu2 = p.nu * p.nu;
  return p.sigma0 *
         std::exp(z_path_integral - 0.25 * nu2 * std::pow(s, h2) + 0.125 * nu2 * std::pow(s - t, h2));
}

double rb_cross_moment(const RBergomiParams& p, double t, double s, double u, double z_path_integral) {
  if (!(t >= 0.0 && t <= s && s <= u)) throw std::invalid_argument("rb_cross_moment: requires 0 <= t <= s <= u");
  const double h2 = 2.0 * p.H;
  const double nu2 = p.nu * p.nu;
  const double drift = 0.5 * nu2 * (std::pow(u - s, h2) - std::pow(u, h2) - 0.5 * std::pow(s, h2));
  const double theta2 = theta_squared_quadrature(p.H, t, s, u);
  return p.sigma0 * p.sigma0 * p.sigma0 * std::exp(drift + z_path_integral + nu2 * p.H * theta2);
}

double rb_mm_double_integral(const RBergomiParams& p, double t, double s, double T, int nodes) {
  if (!(t >= 0.0 && t <= s && s <= T)) throw std::invalid_argument("rb_mm_double_integral: requires 0 <= t <= s <= T");
  if (nodes < 1) throw std::invalid_argument("rb_mm_double_integral: nodes must be positive");
  if (s == T) return 0.0;
  const double a = p.H - 0.5;
  const double h2 = 2.0 * p.H;
  const double nu2 = p.nu * p.nu;
  // the integrand is smooth in (u - s)^{2H}
  const auto rule = quad::graded_power_rule(static_cast<std::size_t>(nodes), a, 1.0 / h2, T - s);

  const std::size_t n = rule.nodes.size();
  std::vector<double> pts(n), w(n), drift(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = s + rule.nodes[i];
    w[i] = rule.weights[i];
    drift[i] = 0.5 * nu2 * (std::pow(rule.nodes[i], h2) - std::pow(pts[i], h2));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double phi2 = phi_squared_quadrature(p.H, t, s, pts[i], pts[j]);
      const double term = w[i] * w[j] * std::exp(drift[i] + drift[j] + nu2 * p.H * phi2);
      sum += (i == j) ? term : 2.0 * term;
    }
  }
  const double s2 = p.sigma0 * p.sigma0;
  return s2 * s2 * sum;
}

}  // namespace cvarough
