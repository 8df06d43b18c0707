#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cvarough::quad {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes.
const Rule& gauss_legendre(std::size_t n);

/// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta, alpha, beta > -1.
/// Built by the Golub-Welsch eigenvalue method.
Rule gauss_jacobi(std::size_t n, double alpha, double beta);

/// Nodes in (0, L) and weights for ∫_0^L y^exponent f(y) dy when f is smooth
/// in y^{1/grading}: Gauss-Jacobi in z with y = L z^grading, n nodes.
Rule graded_power_rule(std::size_t n, double exponent, double grading, double L);

/// Globally adaptive 31-point Gauss-Kronrod on [a, b]; stops when the error
/// estimate is below max(abs_tol, rel_tol * |I|), at the roundoff floor, or
/// after max_intervals subintervals.
double adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                double rel_tol = 1e-12, std::size_t max_intervals = 2000);

/// ∫_a^b (x - a)^exponent f(x) dx for smooth f, exponent > -1, using a
/// Gauss-Jacobi rule that absorbs the endpoint singularity.
double left_singular(const std::function<double(double)>& f, double a, double b,
                     double exponent, std::size_t n);

/// Same integral with a precomputed Jacobi rule (alpha = 0, beta = exponent).
double left_singular(const std::function<double(double)>& f, double a, double b,
                     double exponent, const Rule& jacobi);

/// ∫_a^b (x - a)^exponent f(x) dx computed adaptively after the change of
/// variables x = a + y^{1/(exponent+1)}, which removes the singularity.
double left_singular_adaptive(const std::function<double(double)>& f, double a, double b,
                              double exponent, double abs_tol, double rel_tol = 1e-12);

}  // namespace cvarough::quad
