#include "cvarough/hypergeometric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvarough {

namespace {

constexpr int kMaxTerms = 20000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Plain power series; the caller guarantees 0 <= |z| < 1.
double series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double nn = static_cast<double>(n);
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 2) return sum;
  }
  throw std::domain_error("gauss_2f1: power series did not converge");
}

// 1/Gamma(x), zero at the poles.
double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

// Connection formula around z = 1 for z in (0, 1), c - a - b non-integer.
double around_one(double a, double b, double c, double z) {
  const double s = c - a - b;
  if (std::abs(s - std::round(s)) < 1e-9)
    throw std::domain_error("gauss_2f1: c - a - b is an integer; connection formula unavailable");
  const double w = 1.0 - z;
  const double gc = std::tgamma(c);
  const double c1 = gc * std::tgamma(s) * rgamma(c - a) * rgamma(c - b);
  const double c2 = gc * std::tgamma(-s) * rgamma(a) * rgamma(b);
  const double first = c1 == 0.0 ? 0.0 : c1 * series(a, b, 1.0 - s, w);
  const double second = c2 == 0.0 ? 0.0 : c2 * std::pow(w, s) * series(c - a, c - b, 1.0 + s, w);
  return first + second;
}

double unit_interval(double a, double b, double c, double z) {
  if (z <= 0.9) return series(a, b, c, z);
  const double s = c - a - b;
  if (std::abs(s - std::round(s)) >= 1e-6) return around_one(a, b, c, z);
  if (s > 0.0) return series(a, b, c, z);
  throw std::domain_error("gauss_2f1: argument too close to 1 for an integer c - a - b");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
    throw std::domain_error("gauss_2f1: non-finite argument");
  if (is_nonpositive_integer(c)) throw std::domain_error("gauss_2f1: c is a non-positive integer");
  if (z >= 1.0) throw std::domain_error("gauss_2f1: z >= 1 is outside the convergence region");
  if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;

  if (std::abs(z) <= 0.5) return series(a, b, c, z);
  if (z > 0.0) return unit_interval(a, b, c, z);

  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)); either parameter
  // may be moved, pick the one that keeps the transformed series terminating or
  // with the smaller prefactor exponent.
  const double w = z / (z - 1.0);
  if (is_nonpositive_integer(c - b) || (!is_nonpositive_integer(c - a) && std::abs(a) <= std::abs(b)))
    return std::pow(1.0 - z, -a) * unit_interval(a, c - b, c, w);
  return std::pow(1.0 - z, -b) * unit_interval(c - a, b, c, w);
}

}  // namespace cvarough
