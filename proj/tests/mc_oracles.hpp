#pragma once
// Plain Monte Carlo estimates built from std::mt19937_64 and exact Gaussian
// or noncentral chi-square sampling. Independent of the library.

#include "oracles.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

class Accumulator {
 public:
  void push(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  Estimate get() const {
    return {mean_, std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_))};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0, m2_ = 0.0;
};

/// E[σ_t] for dv = k(θ - v)dt + ν√v dW, v_0 = v0, by exact sampling of v_t.
inline Estimate heston_vol_mc(double v0, double k, double theta, double nu, double t, std::size_t n,
                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const double scale = nu * nu * (1 - std::exp(-k * t)) / (4 * k);
  const double dof = 4 * k * theta / (nu * nu);
  const double nc = v0 * std::exp(-k * t) / scale;
  std::poisson_distribution<long> pois(nc / 2);
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    std::chi_squared_distribution<double> chi(dof + 2.0 * static_cast<double>(pois(gen)));
    acc.push(std::sqrt(scale * chi(gen)));
  }
  return acc.get();
}

/// Draws from N(0, cov) through a symmetric square root (cov may be near singular).
class GaussianVector {
 public:
  explicit GaussianVector(const Eigen::MatrixXd& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    root_ = es.eigenvectors() * ev.asDiagonal();
    z_.resize(cov.rows());
  }
  Eigen::VectorXd draw(std::mt19937_64& gen) {
    for (Eigen::Index i = 0; i < z_.size(); ++i) z_[i] = normal_(gen);
    return root_ * z_;
  }

 private:
  Eigen::MatrixXd root_;
  Eigen::VectorXd z_;
  std::normal_distribution<double> normal_;
};

// rough Bergomi, t = 0: σ²_u = σ0² exp(ν√(2H) Z_u - ν² u^{2H} / 2), Z_u = ∫_0^u (u-ξ)^{H-1/2} dW_ξ

/// E[σ_s]
inline Estimate rb_vol_mean_mc(double sigma0, double nu, double H, double s, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, std::sqrt(std::pow(s, 2 * H) / (2 * H)));
  const double k = nu * std::sqrt(2 * H);
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.push(sigma0 * std::exp(0.5 * k * z(gen) - 0.25 * nu * nu * std::pow(s, 2 * H)));
  return acc.get();
}

/// E[σ_s σ²_u]
inline Estimate rb_cross_moment_mc(double sigma0, double nu, double H, double s, double u, std::size_t n,
                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::Matrix2d cov;
  cov << std::pow(s, 2 * H) / (2 * H), rl_cov(H, s, u), rl_cov(H, s, u), std::pow(u, 2 * H) / (2 * H);
  GaussianVector g(cov);
  const double k = nu * std::sqrt(2 * H), nu2 = nu * nu;
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd z = g.draw(gen);
    acc.push(std::pow(sigma0, 3) *
             std::exp(0.5 * k * z[0] - 0.25 * nu2 * std::pow(s, 2 * H) + k * z[1] - 0.5 * nu2 * std::pow(u, 2 * H)));
  }
  return acc.get();
}

/// E[(∫_s^T (u-s)^{H-1/2} E_s[σ²_u] du)²], the du integral on 40 Gauss-Legendre
/// nodes after u = s + (T-s) v^5.
inline Estimate rb_mm_mc(double sigma0, double nu, double H, double s, double T, std::size_t n,
                         std::uint64_t seed) {
  using GL = boost::math::quadrature::gauss<double, 40>;
  const double a = H - 0.5, L = T - s, nu2 = nu * nu, k = nu * std::sqrt(2 * H);
  std::vector<double> u, w;
  const auto& x = GL::abscissa();
  const auto& gw = GL::weights();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (double sign : {-1.0, 1.0}) {
      const double v = 0.5 * (1 + sign * x[i]);
      u.push_back(s + L * std::pow(v, 5));
      w.push_back(0.5 * gw[i] * 5 * std::pow(L, a + 1) * std::pow(v, 4 + 5 * a));
    }
  const auto m = static_cast<Eigen::Index>(u.size());
  // F_s-measurable part of Z_u: ∫_0^s (u-ξ)^a dW_ξ
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      cov(i, j) = cov(j, i) = integrate(
          [&](double y) { return std::pow((u[i] - s) + y, a) * std::pow((u[j] - s) + y, a); }, 0.0, s, 1e-12);
  std::vector<double> drift(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) drift[i] = -0.5 * nu2 * (std::pow(u[i], 2 * H) - std::pow(u[i] - s, 2 * H));
  GaussianVector g(cov);
  std::mt19937_64 gen(seed);
  Accumulator acc;
  for (std::size_t p = 0; p < n; ++p) {
    const Eigen::VectorXd z = g.draw(gen);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) sum += w[i] * std::exp(k * z[i] + drift[i]);
    const double val = sigma0 * sigma0 * sum;
    acc.push(val * val);
  }
  return acc.get();
}

/// E[Z_{t1} Z_{t2}], t1 <= t2, from the W increments over `cells` pieces of [0, t1]
/// plus [t1, t2]; each piece contributes an exactly sampled Gaussian pair.
inline Estimate rl_cov_mc(double H, double t1, double t2, std::size_t n, std::uint64_t seed, int cells = 16) {
  const double a = H - 0.5;
  std::vector<double> edges;
  for (int i = 0; i <= cells; ++i) edges.push_back(t1 * (1 - std::pow(1 - static_cast<double>(i) / cells, 3)));
  std::vector<GaussianVector> pieces;
  for (int i = 0; i < cells; ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    // y = hi - ξ
    auto kern = [&](double d1, double d2) {
      return integrate([&](double y) { return std::pow(d1 + y, a) * std::pow(d2 + y, a); }, 0.0, hi - lo, 1e-13);
    };
    Eigen::Matrix2d cov;
    cov(0, 0) = kern(t1 - hi, t1 - hi);
    cov(1, 1) = kern(t2 - hi, t2 - hi);
    cov(0, 1) = cov(1, 0) = kern(t1 - hi, t2 - hi);
    pieces.emplace_back(cov);
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> tail(0.0, std::sqrt(std::pow(t2 - t1, 2 * H) / (2 * H)));
  Accumulator acc;
  for (std::size_t p = 0; p < n; ++p) {
    double z1 = 0.0, z2 = tail(gen);
    for (auto& g : pieces) {
      const Eigen::VectorXd d = g.draw(gen);
      z1 += d[0];
      z2 += d[1];
    }
    acc.push(z1 * z2);
  }
  return acc.get();
}

}  // namespace oracle
