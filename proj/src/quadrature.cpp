#include "cvarough/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace cvarough::quad {

namespace {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod_segment(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

Rule gauss_jacobi(std::size_t n, double alpha, double beta) {
  if (n == 0) throw std::invalid_argument("gauss_jacobi: n must be positive");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");

  // Symmetric tridiagonal Jacobi matrix of the monic recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double ab = alpha + beta;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double denom = (2.0 * kk + ab) * (2.0 * kk + ab + 2.0);
    double diag;
    if (k == 0) {
      diag = (beta - alpha) / (ab + 2.0);
    } else {
      diag = (beta * beta - alpha * alpha) / denom;
    }
    J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag;
    if (k + 1 < n) {
      const double m = kk + 1.0;
      const double s = 2.0 * m + ab;
      double off2;
      if (m == 1.0) {
        off2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      } else {
        off2 = 4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0));
      }
      const double off = std::sqrt(off2);
      J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = off;
      J(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigensolver failed");

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    rule.nodes[k] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

const Rule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
  return it->second;
}

double adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                double rel_tol, std::size_t max_intervals) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive(f, b, a, abs_tol, rel_tol, max_intervals);

  std::priority_queue<Segment> work;
  Segment whole = kronrod_segment(f, a, b);
  double total = whole.value;
  double error = whole.error;
  work.push(whole);
  double magnitude = std::abs(whole.value);
  auto target = [&] {
    return std::max({abs_tol, rel_tol * std::abs(total), 64.0 * std::numeric_limits<double>::epsilon() * magnitude});
  };
  while (error > target() && work.size() < max_intervals) {
    Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      work.push(worst);
      break;
    }
    Segment left = kronrod_segment(f, worst.a, mid);
    Segment right = kronrod_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
    work.push(left);
    work.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  while (!work.empty()) {
    sum += work.top().value;
    work.pop();
  }
  return sum;
}

Rule graded_power_rule(std::size_t n, double exponent, double grading, double L) {
  if (!(grading > 0.0)) throw std::invalid_argument("graded_power_rule: grading must be positive");
  // y^e dy = L^{e+1} m z^{m(e+1)-1} dz
  const double beta = grading * (exponent + 1.0) - 1.0;
  Rule r = gauss_jacobi(n, 0.0, beta);
  const double scale = std::pow(L, exponent + 1.0) * grading * std::pow(2.0, -beta - 1.0);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = L * std::pow(0.5 * (1.0 + r.nodes[i]), grading);
    r.weights[i] *= scale;
  }
  return r;
}

double left_singular(const std::function<double(double)>& f, double a, double b,
                     double exponent, const Rule& jacobi) {
  if (b <= a) return 0.0;
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < jacobi.nodes.size(); ++i) {
    sum += jacobi.weights[i] * f(a + half * (1.0 + jacobi.nodes[i]));
  }
  return std::pow(half, exponent + 1.0) * sum;
}

double left_singular(const std::function<double(double)>& f, double a, double b,
                     double exponent, std::size_t n) {
  return left_singular(f, a, b, exponent, gauss_jacobi(n, 0.0, exponent));
}

double left_singular_adaptive(const std::function<double(double)>& f, double a, double b,
                              double exponent, double abs_tol, double rel_tol) {
  if (b <= a) return 0.0;
  const double p = exponent + 1.0;
  // x - a = y^{1/p}  =>  (x - a)^exponent dx = dy / p
  const double ymax = std::pow(b - a, p);
  auto g = [&](double y) { return f(a + std::pow(y, 1.0 / p)); };
  return adaptive(g, 0.0, ymax, abs_tol * p, rel_tol) / p;
}

}  // namespace cvarough::quad
