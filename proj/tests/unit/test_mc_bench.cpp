#include "cvarough/mc_bench.hpp"
#include "cvarough/parallel.hpp"
#include "cvarough/rng.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace cvarough;

namespace {

const CirParams kSetA{0.035, 0.35, 0.035, 0.1};
const CirParams kSetB{0.01, 0.8, 0.02, 0.2};
const CirParams kNoDefault{0.0, 0.35, 0.0, 0.1};
const RBergomiParams kRb{0.08, 0.1, 0.1};

McConfig small(std::size_t n) {
  McConfig cfg;
  cfg.n_paths = n;
  cfg.n_steps = 50;
  cfg.chunk_size = 1000;
  return cfg;
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("philox known answers") {
    using C = PhiloxCounter;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams") {
    NormalStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    std::vector<double> bulk(1001);
    b.fill_normal(bulk.data(), bulk.size());
    bool differ_c = false, differ_d = false;
    for (double v : bulk) {
      CHECK(a.normal() == v);
      differ_c |= c.normal() != v;
      differ_d |= d.normal() != v;
    }
    CHECK(differ_c);
    CHECK(differ_d);

    NormalStream u(1, 0);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double x = u.uniform();
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);

    NormalStream z(2, 9);
    const int n = 400000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = z.normal();
      s += x;
      s2 += x * x;
      s4 += x * x * x * x;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(s4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
  }
}

TEST_SUITE("parallel") {
  TEST_CASE("every index exactly once") {
    for (unsigned threads : {1u, 3u, 8u}) {
      std::vector<std::atomic<int>> hits(1000);
      parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
      for (auto& h : hits) CHECK(h.load() == 1);
    }
    CHECK(resolve_threads(5) == 5);
    CHECK(resolve_threads(0) >= 1);
  }

  TEST_CASE("exceptions propagate") {
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                   if (i == 37) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}

TEST_SUITE("mc_bench") {
  TEST_CASE("running statistics") {
    std::vector<double> xs;
    NormalStream g(3, 0);
    for (int i = 0; i < 1000; ++i) xs.push_back(2.0 + 0.5 * g.normal());
    RunningStats all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      all.push(xs[i]);
      (i < 377 ? left : right).push(xs[i]);
    }
    left.merge(right);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    CHECK(all.mean() == doctest::Approx(mean).epsilon(1e-13));
    CHECK(all.variance() == doctest::Approx(ss / 999).epsilon(1e-12));
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-14));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
    const auto r = all.result(0.95, 0.5);
    CHECK(r.estimate == doctest::Approx(0.5 * mean));
    CHECK(r.std_error == doctest::Approx(0.5 * std::sqrt(ss / 999 / 1000)));
    CHECK(r.ci_half_width == doctest::Approx(1.959963984540054 * r.std_error).epsilon(1e-14));
    CHECK(normal_ci_quantile(0.99) == doctest::Approx(2.5758293035489).epsilon(1e-12));
    CHECK_THROWS_AS(normal_ci_quantile(1.0), std::invalid_argument);
  }

  TEST_CASE("config validation") {
    McConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_steps = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = McConfig{};
    c.n_paths = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = McConfig{};
    c.ci_level = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("time grid") {
    const auto g = mc_time_grid(0.25, 100);
    REQUIRE(g.size() == 99);
    CHECK(g.front() == doctest::Approx(0.25 / 99));
    CHECK(g.back() == 0.25);
    CHECK_THROWS_AS(mc_time_grid(0.0, 10), std::invalid_argument);
  }

  TEST_CASE("joint covariance") {
    const std::vector<double> grid{0.1, 0.25, 0.6};
    const auto bm = joint_gaussian_covariance(0.5, {0.0, 0.0, 0.0}, grid);
    REQUIRE(bm.rows() == 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) {
            const double expected = b == c ? std::min(grid[i], grid[j]) : 0.0;
            CHECK(bm(3 * b + i, 3 * c + j) == doctest::Approx(expected).epsilon(1e-12));
          }

    const double H = 0.1, a = H - 0.5;
    const CorrelationStructure corr{-0.2, 0.6, 0.3};
    const auto cov = joint_gaussian_covariance(H, corr, grid);
    CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(cov(3 + i, 3 + i) == doctest::Approx(std::pow(grid[i], 2 * H) / (2 * H)).epsilon(1e-12));
      for (int j = 0; j < 3; ++j) {
        const double m = std::min(grid[i], grid[j]);
        // Cov(B_ti, Z_tj) = η ∫_0^{min} (t_j - ξ)^a dξ
        const double k = oracle::integrate([&](double y) { return std::pow((grid[j] - m) + y, a); }, 0.0, m);
        CHECK(cov(i, 3 + j) == doctest::Approx(corr.eta * k).epsilon(1e-12));
        CHECK(cov(6 + i, 3 + j) == doctest::Approx(corr.gamma * k).epsilon(1e-12));
        CHECK(cov(i, 6 + j) == doctest::Approx(corr.rho * m).epsilon(1e-14));
        CHECK(cov(3 + i, 3 + j) == doctest::Approx(oracle::rl_cov(H, grid[i], grid[j])).epsilon(1e-10));
      }
    }
    CHECK_THROWS_AS(joint_gaussian_covariance(H, corr, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(joint_gaussian_covariance(H, {0.7, 0.7, -0.7}, grid), std::invalid_argument);
  }

  TEST_CASE("cholesky over the table grid") {
    const auto grid = mc_time_grid(0.25, 100);
    for (double r = -0.8; r <= 0.81; r += 0.2) {
      for (double g = -0.3; g <= 0.31; g += 0.15) {
        const auto cov = joint_gaussian_covariance(0.1, {-0.2, r, g}, grid);
        const auto L = cholesky_with_jitter(cov);
        const double err = (L * L.transpose() - cov).cwiseAbs().maxCoeff();
        CHECK(err <= 1e-12 * cov.diagonal().maxCoeff() + 1e-14);
      }
    }
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(cholesky_with_jitter(bad), std::runtime_error);
  }

  TEST_CASE("deterministic across thread counts") {
    auto cfg = small(5000);
    const auto k = ContractState::from_prices(100, 100, 0.0, 0.25);
    cfg.threads = 1;
    const auto one = simulate_rbergomi_cva(cfg, kRb, kSetA, {-0.2, 0.4, 0.15}, k);
    const auto d1 = simulate_diffusion_cva(cfg, HestonParams{0.04, 2.0, 0.04, 0.3}, kSetA, {-0.5, 0.3, 0.1}, k);
    for (unsigned t : {2u, 4u, 8u}) {
      cfg.threads = t;
      const auto many = simulate_rbergomi_cva(cfg, kRb, kSetA, {-0.2, 0.4, 0.15}, k);
      CHECK(many.cva.estimate == one.cva.estimate);
      CHECK(many.cva.std_error == one.cva.std_error);
      CHECK(simulate_diffusion_cva(cfg, HestonParams{0.04, 2.0, 0.04, 0.3}, kSetA, {-0.5, 0.3, 0.1}, k).cva.estimate ==
            d1.cva.estimate);
    }
    cfg.seed = 43;
    CHECK(simulate_rbergomi_cva(cfg, kRb, kSetA, {-0.2, 0.4, 0.15}, k).cva.estimate != one.cva.estimate);
  }

  TEST_CASE("martingale and risk-free price") {
    const auto k = ContractState::from_prices(100, 100, 0.0, 0.5);
    auto cfg = small(20000);
    const auto r = simulate_rbergomi_cva(cfg, kRb, kNoDefault, {-0.2, 0.0, 0.0}, k);
    CHECK(std::abs(r.forward.estimate - 100.0) < 3 * r.forward.std_error);
    CHECK(r.cva.estimate == 0.0);
    // ν -> 0: Black-Scholes with σ0
    const auto flat = simulate_rbergomi_cva(cfg, {0.2, 1e-8, 0.1}, kNoDefault, {-0.2, 0.0, 0.0}, k);
    CHECK(std::abs(flat.risk_free.estimate - 100 * oracle::bs_call(0, 0, 0.2, 0.5)) < 3 * flat.risk_free.std_error);
  }

  TEST_CASE("diffusion limits") {
    const auto k = ContractState::from_prices(100, 100, 0.0, 0.5);
    auto cfg = small(50000);
    const auto s = simulate_diffusion_cva(cfg, SabrParams{0.2, 0.0, 1.0}, kNoDefault, {-0.3, 0.0, 0.0}, k);
    CHECK(std::abs(s.risk_free.estimate - 100 * oracle::bs_call(0, 0, 0.2, 0.5)) < 3 * s.risk_free.std_error);
    CHECK(std::abs(s.forward.estimate - 100.0) < 3 * s.forward.std_error);
    const auto h = simulate_diffusion_cva(cfg, HestonParams{0.04, 2.0, 0.04, 1e-8}, kNoDefault, {-0.5, 0.0, 0.0}, k);
    CHECK(std::abs(h.risk_free.estimate - 100 * oracle::bs_call(0, 0, 0.2, 0.5)) < 3 * h.risk_free.std_error);
    CHECK_THROWS_AS(simulate_diffusion_cva(cfg, kRb, kSetA, {0.0, 0.0, 0.0}, k), std::invalid_argument);
  }

  TEST_CASE("cir simulation") {
    McConfig cfg = small(100000);
    cfg.n_steps = 100;
    for (const auto& [c, T] : {std::pair{kSetA, 0.25}, std::pair{kSetB, 1.0}}) {
      const auto r = simulate_cir(cfg, c, T);
      const double exact = survival_factor(c, c.lambda0, T);
      CHECK(std::abs(r.survival.estimate - exact) < 3 * r.survival.std_error);
      CHECK(r.grid.size() == r.sqrt_lambda_survival.size());
    }
    const CirParams det{0.05, 0.5, 0.02, 1e-5};
    McConfig fine = small(1000);
    fine.n_steps = 500;
    const auto r = simulate_cir(fine, det, 1.0);
    const double expected = std::exp(-(det.mu + (det.lambda0 - det.mu) * (1 - std::exp(-det.q)) / det.q));
    CHECK(std::abs(r.survival.estimate - expected) < 1e-5);
  }

  TEST_CASE("truncated steps are rare, set A") {
    McConfig cfg = small(100000);
    cfg.n_steps = 100;
    CHECK(simulate_cir(cfg, kSetA, 0.25).truncated_fraction < 0.01);
    CHECK(simulate_cir(cfg, kSetA, 1.0).truncated_fraction < 0.01);
  }

  // set B breaks the Feller condition; about 1.05% of steps go negative at T = 1
  TEST_CASE("truncated steps are rare, set B" * doctest::may_fail()) {
    McConfig cfg = small(100000);
    cfg.n_steps = 100;
    CHECK(simulate_cir(cfg, kSetB, 0.25).truncated_fraction < 0.01);
    CHECK(simulate_cir(cfg, kSetB, 1.0).truncated_fraction < 0.01);
  }

  TEST_CASE("standard error scales with the square root of the path count") {
    McConfig cfg = small(10000);
    cfg.n_steps = 20;
    std::vector<double> lx, ly;
    for (std::size_t n : {10000u, 100000u, 1000000u}) {
      cfg.n_paths = n;
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(simulate_cir(cfg, kSetB, 1.0).survival.std_error));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    CHECK(sxy / sxx == doctest::Approx(-0.5).epsilon(0.1));
  }
}
