#include "cvarough/cva_engine.hpp"

#include "cvarough/bs_core.hpp"
#include "cvarough/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cvarough {

namespace {

constexpr double kAbsTol = 1e-13;
constexpr double kRelTol = 1e-10;
constexpr std::size_t kTensorNodes = 24;

template <class F>
double integrate(F&& f, double a, double b, double rel = kRelTol) {
  return quad::adaptive(std::forward<F>(f), a, b, kAbsTol, rel);
}

// ∫_0^L y^e f(y) dy with f smooth in y^{2H}
template <class F>
double graded(F&& f, double L, double e, double H) {
  const auto rule = quad::graded_power_rule(kTensorNodes, e, 0.5 / H, L);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

// (e^{α²τ} - 1) / α, zero in the α -> 0 limit
double sabr_kernel(double alpha, double tau) {
  if (alpha == 0.0) return 0.0;
  return std::expm1(alpha * alpha * tau) / alpha;
}

struct Common {
  double survival;
  double vhat;
  BsDerivatives d;
  double base;
};

Common common_terms(const CirParams& c, const ContractState& k, double vhat) {
  Common out;
  out.survival = survival_factor(c, c.lambda0, k.T - k.t);
  out.vhat = vhat;
  const BsPoint pt{k.t, k.x, k.kappa, vhat, k.T};
  out.d = call_derivatives(pt);
  out.base = (1.0 - out.survival) * call_price(pt);
  return out;
}

CvaSensitivities assemble(const Common& cm, const ContractState& k) {
  CvaSensitivities s;
  s.base = cm.base;
  s.survival = cm.survival;
  s.vhat = cm.vhat;
  s.recovery = k.recovery;
  return s;
}

}  // namespace

bool CorrelationStructure::admissible() const {
  const double e2 = eta * eta, r2 = rho * rho, g2 = gamma * gamma;
  return e2 < 1.0 && r2 < 1.0 && g2 < 1.0 && g2 + r2 + e2 < 1.0 + 2.0 * gamma * eta * rho;
}

void CorrelationStructure::validate() const {
  if (!admissible())
    throw std::invalid_argument("CorrelationStructure: (eta, rho, gamma) is not an admissible correlation triple");
}

ContractState ContractState::from_prices(double spot, double strike, double t, double T, double recovery) {
  if (!(spot > 0.0 && strike > 0.0)) throw std::invalid_argument("ContractState: spot and strike must be positive");
  return ContractState{std::log(spot), std::log(strike), t, T, recovery};
}

void ContractState::validate() const {
  if (!(t >= 0.0 && T > t)) throw std::invalid_argument("ContractState: requires 0 <= t < T");
  if (!(recovery >= 0.0 && recovery < 1.0)) throw std::invalid_argument("ContractState: recovery must lie in [0, 1)");
  if (!std::isfinite(x) || !std::isfinite(kappa))
    throw std::invalid_argument("ContractState: log-spot and log-strike must be finite");
}

CvaBreakdown CvaSensitivities::at(double rho, double gamma) const {
  CvaBreakdown b;
  b.base = base;
  b.qvar_mm = qvar_mm;
  b.skew_mx = skew_mx;
  b.wwr_nx = rho * g_rho;
  b.volint_nm = gamma * g_gamma;
  b.total = (1.0 - recovery) * (b.base + b.qvar_mm + b.skew_mx + b.volint_nm + b.wwr_nx);
  b.survival = survival;
  b.vhat = vhat;
  return b;
}

double heston_kernel_integral(const HestonParams& h, int n, double t, double T) {
  if (!(T >= t)) throw std::invalid_argument("heston_kernel_integral: requires t <= T");
  const double D = T - t;
  const double k = h.k;
  const double e1 = std::exp(-k * D);
  const double om1 = -std::expm1(-k * D) / k;  // (1 - e^{-kD}) / k
  const double dv = h.sigma2_0 - h.theta;
  if (n == 1) return h.theta * (D - om1) + dv * (om1 - D * e1);
  if (n == 2) {
    const double om2 = -std::expm1(-2.0 * k * D) / (2.0 * k);
    return h.theta * (D - 2.0 * om1 + om2) + dv * (om1 - 2.0 * D * e1 + e1 * om1);
  }
  throw std::invalid_argument("heston_kernel_integral: n must be 1 or 2");
}

CvaSensitivities heston_cir_sensitivities(const HestonParams& h, const CirParams& c, double eta,
                                          const ContractState& k) {
  h.validate();
  c.validate();
  k.validate();
  const Common cm = common_terms(c, k, heston_variance_swap(h, k.t, k.T));
  const double one_minus_n = 1.0 - cm.survival;
  CvaSensitivities s = assemble(cm, k);

  s.qvar_mm = 0.125 * one_minus_n * cm.d.l2 * (h.nu * h.nu / (h.k * h.k)) * heston_kernel_integral(h, 2, k.t, k.T);
  s.skew_mx = 0.5 * eta * one_minus_n * cm.d.dxxx_m_dxx * (h.nu / h.k) * heston_kernel_integral(h, 1, k.t, k.T);

  const double lt = c.lambda0;
  const double wwr = integrate(
      [&](double u) {
        const double phi = bond_coefficients(c, k.T - u).phi;
        return phi * sqrt_lambda_survival(c, lt, k.t, u, k.T) * heston_vol_mean(h, u - k.t);
      },
      k.t, k.T);
  s.g_rho = -c.c * cm.d.dx * wwr;

  const double vol = integrate(
      [&](double u) {
        const double phi = bond_coefficients(c, k.T - u).phi;
        return phi * -std::expm1(-h.k * (k.T - u)) * sqrt_lambda_survival(c, lt, k.t, u, k.T) *
               heston_vol_mean(h, u - k.t);
      },
      k.t, k.T);
  s.g_gamma = -0.5 * h.nu * c.c / h.k * cm.d.l1 * vol;
  return s;
}

CvaSensitivities sabr_cir_sensitivities(const SabrParams& sp, const CirParams& c, double eta,
                                        const ContractState& k) {
  sp.validate();
  c.validate();
  k.validate();
  SabrParams p = sp;
  p.sigma0 = sp.sigma0 * std::exp(-(1.0 - sp.beta) * k.x);
  const Common cm = common_terms(c, k, sabr_variance_swap(p, k.t, k.T));
  const double one_minus_n = 1.0 - cm.survival;
  CvaSensitivities s = assemble(cm, k);
  const double a = p.alpha;

  const double mm = integrate(
      [&](double u) {
        const double kern = sabr_kernel(a, k.T - u);
        return kern * kern * sabr_vol_moment(p, 4, u - k.t);
      },
      k.t, k.T);
  s.qvar_mm = 0.5 * one_minus_n * cm.d.l2 * mm;

  const double mx = integrate([&](double u) { return sabr_kernel(a, k.T - u) * sabr_vol_moment(p, 3, u - k.t); },
                              k.t, k.T);
  s.skew_mx = eta * one_minus_n * cm.d.dxxx_m_dxx * mx;

  const double lt = c.lambda0;
  const double wwr = integrate(
      [&](double u) {
        return bond_coefficients(c, k.T - u).phi * sqrt_lambda_survival(c, lt, k.t, u, k.T) *
               sabr_vol_moment(p, 1, u - k.t);
      },
      k.t, k.T);
  s.g_rho = -c.c * cm.d.dx * wwr;

  const double vol = integrate(
      [&](double u) {
        return bond_coefficients(c, k.T - u).phi * sabr_kernel(a, k.T - u) *
               sqrt_lambda_survival(c, lt, k.t, u, k.T) * sabr_vol_moment(p, 2, u - k.t);
      },
      k.t, k.T);
  s.g_gamma = -c.c * cm.d.l1 * vol;
  return s;
}

CvaSensitivities rbergomi_cir_sensitivities(const RBergomiParams& r, const CirParams& c, double eta,
                                            const ContractState& k) {
  r.validate();
  c.validate();
  k.validate();
  if (k.t != 0.0) throw std::invalid_argument("rbergomi_cir: only valuation at t = 0 is supported");
  const double T = k.T;
  const double H = r.H;
  const double a = H - 0.5;
  const Common cm = common_terms(c, k, r.sigma0);
  const double one_minus_n = 1.0 - cm.survival;
  CvaSensitivities s = assemble(cm, k);
  const double nu2 = r.nu * r.nu;
  const double kern = r.nu * std::sqrt(2.0 * H);

  // ∫_0^T mm(s) ds, mm(s) = O((T - s)^{2H+1})
  const double e_mm = 2.0 * H + 1.0;
  const double mm = graded(
      [&](double y) { return rb_mm_double_integral(r, 0.0, T - y, T, kTensorNodes) / std::pow(y, e_mm); }, T, e_mm, H);
  s.qvar_mm = 0.25 * nu2 * H * one_minus_n * cm.d.l2 * mm;

  // ∫_0^T ∫_s^T (v - s)^a E[σ_s σ²_v] dv ds with s = T - y, v = s + y z
  const double mx = graded(
      [&](double y) {
        const double u = T - y;
        return graded([&](double z) { return rb_cross_moment(r, 0.0, u, u + y * z, 0.0); }, 1.0, a, H);
      },
      T, H + 0.5, H);
  s.skew_mx = 0.5 * eta * kern * one_minus_n * cm.d.dxxx_m_dxx * mx;

  const double lt = c.lambda0;
  const double wwr = integrate(
      [&](double u) {
        return bond_coefficients(c, T - u).phi * sqrt_lambda_survival(c, lt, 0.0, u, T) *
               rb_vol_mean(r, 0.0, u, 0.0);
      },
      0.0, T);
  s.g_rho = -c.c * cm.d.dx * wwr;

  const double vol = integrate(
      [&](double u) {
        return bond_coefficients(c, T - u).phi * sqrt_lambda_survival(c, lt, 0.0, u, T) *
               std::pow(T - u, H + 0.5);
      },
      0.0, T);
  s.g_gamma = -0.5 * c.c * kern * r.sigma0 * r.sigma0 / (H + 0.5) * cm.d.l1 * vol;
  return s;
}

CvaSensitivities cva_sensitivities(const VolModelParams& model, const CirParams& c, double eta,
                                   const ContractState& k) {
  struct Visitor {
    const CirParams& c;
    double eta;
    const ContractState& k;
    CvaSensitivities operator()(const HestonParams& h) const { return heston_cir_sensitivities(h, c, eta, k); }
    CvaSensitivities operator()(const SabrParams& s) const { return sabr_cir_sensitivities(s, c, eta, k); }
    CvaSensitivities operator()(const RBergomiParams& r) const { return rbergomi_cir_sensitivities(r, c, eta, k); }
  };
  return std::visit(Visitor{c, eta, k}, model);
}

CvaBreakdown cva_heston_cir(const HestonParams& h, const CirParams& c, const CorrelationStructure& corr,
                            const ContractState& k) {
  corr.validate();
  return heston_cir_sensitivities(h, c, corr.eta, k).at(corr.rho, corr.gamma);
}

CvaBreakdown cva_sabr_cir(const SabrParams& s, const CirParams& c, const CorrelationStructure& corr,
                          const ContractState& k) {
  corr.validate();
  return sabr_cir_sensitivities(s, c, corr.eta, k).at(corr.rho, corr.gamma);
}

CvaBreakdown cva_rbergomi_cir(const RBergomiParams& r, const CirParams& c, const CorrelationStructure& corr,
                              const ContractState& k) {
  corr.validate();
  return rbergomi_cir_sensitivities(r, c, corr.eta, k).at(corr.rho, corr.gamma);
}

CvaBreakdown cva_approx(const VolModelParams& model, const CirParams& c, const CorrelationStructure& corr,
                        const ContractState& k) {
  corr.validate();
  return cva_sensitivities(model, c, corr.eta, k).at(corr.rho, corr.gamma);
}

double variance_swap_vol(const VolModelParams& model, double t, double T) {
  if (!(T > t)) throw std::invalid_argument("variance_swap_vol: requires T > t");
  if (const auto* h = std::get_if<HestonParams>(&model)) return heston_variance_swap(*h, t, T);
  if (const auto* s = std::get_if<SabrParams>(&model)) return sabr_variance_swap(*s, t, T);
  const auto& r = std::get<RBergomiParams>(model);
  if (t == 0.0) return r.sigma0;
  const double integral = integrate([&](double u) { return rb_forward_variance(r, t, u, 0.0); }, t, T);
  return std::sqrt(integral / (T - t));
}

}  // namespace cvarough
