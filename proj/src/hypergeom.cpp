#include "ho/hypergeom.hpp"

#include <algorithm>
#include <cmath>

#include "ho/errors.hpp"

namespace ho {

namespace {

SpectralParameter nudge(const RootSystem& rs, const SpectralParameter& lam) {
  RatVec rho1 = rho_weighted(rs, constant_multiplicity(rs, 1));
  SpectralParameter out = lam;
  for (size_t i = 0; i < out.coords.size(); ++i)
    out.coords[i] += std::complex<double>(0.0, 1e-6 * to_double(rho1[i]));
  out.exact.reset();
  return out;
}

}  // namespace

HypergeometricEvaluator::HypergeometricEvaluator(RootSystemPtr rs, MultiplicityFunction k,
                                                 SpectralParameter lambda, TruncationPolicy policy)
    : rs_(std::move(rs)), k_(std::move(k)), lambda_(std::move(lambda)), policy_(policy) {
  auto rho = c_tilde_at_rho(*rs_, k_);
  if (rho.zero) fail(Errc::NotRegular, "k is not in K_reg: c~(rho(k)) = 0");
  ctilde_rho_ = rho.value;

  auto weyl = weyl_elements(*rs_);
  TruncationPolicy table_policy = policy_;
  table_policy.perturb = false;  // perturbation must be applied to lambda globally

  for (int attempt = 0;; ++attempt) {
    try {
      tables_.clear();
      ctilde_neg_.clear();
      for (const auto& w : weyl) {
        SpectralParameter wl = weyl_apply(*rs_, w, lambda_);
        auto ct = c_tilde(*rs_, k_, wl.negated());
        if (ct.is_pole) fail(Errc::ResonantParameter, "c~(-w lambda) has a pole");
        ctilde_neg_.push_back(ct.value);
        tables_.push_back(hc_coefficients(rs_, k_, wl, policy_.max_height, table_policy));
      }
      break;
    } catch (const DomainError& e) {
      if (e.code() == Errc::ResonantParameter && policy_.perturb && attempt < 2) {
        lambda_ = nudge(*rs_, lambda_);
        continue;
      }
      throw;
    }
  }
}

std::complex<double> HypergeometricEvaluator::eval(const std::vector<double>& H) const {
  auto img = chamber_map(*rs_, H);
  const auto& rd = rs_->roots_d();
  for (int a = 0; a < rs_->n_positive(); ++a) {
    double av = rs_->inner_d(rd[rs_->positive[a]], img.h);
    if (av > -policy_.wall_margin)
      fail(Errc::TooCloseToWallOrOrigin, "H is within wall_margin of a chamber wall");
  }
  std::complex<double> acc = 0.0;
  for (size_t i = 0; i < tables_.size(); ++i) acc += ctilde_neg_[i] * phi_eval(tables_[i], img.h, policy_);
  return acc / ctilde_rho_;
}

std::complex<double> f_eval(const RootSystemPtr& rs, const MultiplicityFunction& k,
                            const SpectralParameter& lambda, const std::vector<double>& H,
                            const TruncationPolicy& policy) {
  HypergeometricEvaluator F(rs, k, lambda, policy);
  return F.eval(H);
}

CoshFactor cosh_factor(const RootSystem& sigma, const MultiplicityFunction& m,
                       const std::vector<RatVec>& sigma_pi, const RatVec& k_pi_values) {
  auto k_at = [&](const RatVec& v) -> Rat {
    for (size_t i = 0; i < sigma_pi.size(); ++i)
      if (sigma_pi[i] == v) return k_pi_values[i];
    return 0;
  };
  for (const auto& b : sigma_pi)
    if (!sigma.is_root(b) && !sigma.is_root(rat_vec_scale(b, Rat(1, 2))))
      fail(Errc::MC1Violated, "Sigma^pi not contained in Sigma u 2Sigma");

  CoshFactor cf;
  const int n = sigma.ambient_dim;
  for (int pi = 0; pi < sigma.n_positive(); ++pi) {
    const RatVec& a = sigma.positive_root(pi);
    if (sigma.is_root(rat_vec_scale(a, Rat(1, 2)))) continue;  // a in 2Sigma
    Rat ma = m.on_vector(sigma, a);
    Rat m2a = m.on_vector(sigma, rat_vec_scale(a, 2));
    Rat ka = k_at(a), k2a = k_at(rat_vec_scale(a, 2)), k4a = k_at(rat_vec_scale(a, 4));
    if ((ma + m2a) / 2 != ka + k2a + k4a)
      fail(Errc::RegularityViolated,
           "(m_a+m_2a)/2 = k_a+k_2a+k_4a fails on a positive root; the weight ratio is singular");
    CoshFactor::Term t;
    t.g_alpha.assign(n, 0.0);
    const auto& G = sigma.gram_d();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.g_alpha[i] += G[i][j] * to_double(a[j]);
    t.exp_half = -to_double(ka);
    t.exp_full = to_double(k4a - m2a / 2);
    if (t.exp_half != 0.0 || t.exp_full != 0.0) cf.terms.push_back(std::move(t));
  }
  return cf;
}

double cosh_eval(const CoshFactor& cf, const std::vector<double>& H) {
  double log_acc = 0.0;
  for (const auto& t : cf.terms) {
    double x = 0.0;
    for (size_t i = 0; i < H.size(); ++i) x += t.g_alpha[i] * H[i];
    if (t.exp_half != 0.0) log_acc += t.exp_half * std::log(std::cosh(x / 2.0));
    if (t.exp_full != 0.0) log_acc += t.exp_full * std::log(std::cosh(x));
  }
  return std::exp(log_acc);
}

MatchedEvaluator make_matched_evaluator(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                                        const std::vector<RatVec>& sigma_pi, const RatVec& k_pi_values) {
  MatchedEvaluator ev;
  ev.sigma = sigma;
  ev.m = m;
  ev.cosh = cosh_factor(*sigma, m, sigma_pi, k_pi_values);
  ev.sigma_pi = std::make_shared<RootSystem>(custom_root_system(sigma_pi, sigma->gram));
  // k^pi as an orbit function on Sigma^pi; must be constant on orbits
  ev.k_pi.by_orbit.assign(ev.sigma_pi->num_orbits, 0);
  std::vector<bool> seen(ev.sigma_pi->num_orbits, false);
  for (size_t i = 0; i < sigma_pi.size(); ++i) {
    int idx = ev.sigma_pi->root_index(sigma_pi[i]);
    int o = ev.sigma_pi->orbit_of[idx];
    if (seen[o] && ev.k_pi.by_orbit[o] != k_pi_values[i])
      fail(Errc::InvalidArgument, "k^pi is not constant on Weyl orbits of Sigma^pi");
    ev.k_pi.by_orbit[o] = k_pi_values[i];
    seen[o] = true;
  }
  return ev;
}

std::complex<double> MatchedEvaluator::upsilon(const SpectralParameter& lambda, const std::vector<double>& H,
                                               const TruncationPolicy& policy) const {
  HypergeometricEvaluator F(sigma_pi, k_pi, lambda, policy);
  return cosh_eval(cosh, H) * F.eval(H);
}

std::function<std::complex<double>(const std::vector<double>&)> MatchedEvaluator::upsilon_fn(
    const SpectralParameter& lambda, const TruncationPolicy& policy) const {
  auto F = std::make_shared<HypergeometricEvaluator>(sigma_pi, k_pi, lambda, policy);
  CoshFactor cf = cosh;
  return [F, cf](const std::vector<double>& H) { return cosh_eval(cf, H) * F->eval(H); };
}

double casimir_residual(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                        const MultiplicityFunction& kappa, const SpectralParameter& lambda,
                        const std::function<std::complex<double>(const std::vector<double>&)>& upsilon,
                        const std::vector<double>& H, double h) {
  const RootSystem& rs = *sigma;
  const int n = rs.ambient_dim;
  const auto& rd = rs.roots_d();

  double wall = 1e300;
  for (int a = 0; a < rs.n_positive(); ++a)
    wall = std::min(wall, std::abs(rs.inner_d(rd[rs.positive[a]], H)));
  if (h <= 0 || 4.0 * h > wall) fail(Errc::StepTooLarge, "step is too large for the distance to the walls");

  auto at = [&](const std::vector<double>& x) { return upsilon(x); };
  auto shift = [&](const std::vector<double>& x, int dir, double step) {
    auto y = x;
    y[dir] += step;
    return y;
  };

  std::complex<double> u0 = at(H);

  // Omega = sum_{ab} (G^{-1})_{ab} d_a d_b by central differences
  const auto& Gi = rs.gram_inv_d();
  std::complex<double> omega = 0.0;
  for (int a = 0; a < n; ++a) {
    if (Gi[a][a] != 0.0) {
      std::complex<double> dd = (at(shift(H, a, h)) - 2.0 * u0 + at(shift(H, a, -h))) / (h * h);
      omega += Gi[a][a] * dd;
    }
    for (int b = a + 1; b < n; ++b) {
      if (Gi[a][b] == 0.0) continue;
      auto pp = shift(shift(H, a, h), b, h);
      auto pm = shift(shift(H, a, h), b, -h);
      auto mp = shift(shift(H, a, -h), b, h);
      auto mm = shift(shift(H, a, -h), b, -h);
      std::complex<double> dd = (at(pp) - at(pm) - at(mp) + at(mm)) / (4.0 * h * h);
      omega += 2.0 * Gi[a][b] * dd;
    }
  }

  std::complex<double> first = 0.0, zeroth = 0.0;
  for (int a = 0; a < rs.n_positive(); ++a) {
    double ma = to_double(m.on_root(rs, rs.positive[a]));
    if (ma == 0.0) continue;
    const auto& alpha = rd[rs.positive[a]];
    double x = rs.inner_d(alpha, H);
    double aa = rs.inner_d(alpha, alpha);
    // derivative along H_alpha = the vector alpha
    std::vector<double> Hp = H, Hm = H;
    for (int i = 0; i < n; ++i) {
      Hp[i] += h * alpha[i];
      Hm[i] -= h * alpha[i];
    }
    std::complex<double> da = (at(Hp) - at(Hm)) / (2.0 * h);
    first += ma / std::tanh(x) * da;
    double ka = to_double(kappa.on_root(rs, rs.positive[a]));
    double ch = std::cosh(x / 2.0);
    zeroth += -ma * ka * aa / (4.0 * ch * ch) * u0;
  }

  std::complex<double> lhs = omega + first + zeroth;
  // eigenvalue (lambda,lambda) - |rho|^2 with rho = (1/2) sum m_a a
  RatVec rho = rho_weighted(rs, m);
  std::vector<double> rho_d(n);
  for (int i = 0; i < n; ++i) rho_d[i] = to_double(rho[i]);
  std::complex<double> ll = 0.0;
  const auto& G = rs.gram_d();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ll += lambda.coords[i] * G[i][j] * lambda.coords[j];
  std::complex<double> eig = ll - rs.inner_d(rho_d, rho_d);

  return std::abs(lhs - eig * u0) / (1.0 + std::abs(u0));
}

std::complex<double> asymptotic_c(const HypergeometricEvaluator& F, const std::vector<double>& H, double t) {
  const RootSystem& rs = F.root_system();
  const auto& rd = rs.roots_d();
  for (int a = 0; a < rs.n_positive(); ++a) {
    if (rs.inner_d(rd[rs.positive[a]], H) <= 0.0)
      fail(Errc::InvalidArgument, "asymptotic_c needs H in the positive chamber");
    if (pairing_coroot(rs, F.lambda(), rs.positive[a]).real() <= 0.0)
      fail(Errc::InvalidArgument, "asymptotic_c needs Re lambda(alpha^vee) > 0 on positive roots");
  }
  std::vector<double> tH(H.size());
  for (size_t i = 0; i < H.size(); ++i) tH[i] = t * H[i];
  std::complex<double> lamH = spectral_inner(rs, F.lambda(), H);
  double rhoH = rs.inner_d(F.rho_k(), H);
  return std::exp(t * (-lamH + rhoH)) * F.eval(tH);
}

double potential_hyper(const RootSystem& rs_pi, const MultiplicityFunction& k_pi, const std::vector<double>& H) {
  const auto& rd = rs_pi.roots_d();
  double v = 0.0;
  for (int a = 0; a < rs_pi.n_positive(); ++a) {
    double kb = to_double(k_pi.on_root(rs_pi, rs_pi.positive[a]));
    if (kb == 0.0) continue;
    RatVec twice = rat_vec_scale(rs_pi.positive_root(a), 2);
    double k2b = to_double(k_pi.on_vector(rs_pi, twice));
    const auto& beta = rd[rs_pi.positive[a]];
    double x = rs_pi.inner_d(beta, H);
    double bb = rs_pi.inner_d(beta, beta);
    double sh = std::sinh(x / 2.0);
    v += kb * (1.0 - kb - 2.0 * k2b) * bb / (4.0 * sh * sh);
  }
  return v;
}

double potential_group(const RootSystem& sigma, const MultiplicityFunction& m, const MultiplicityFunction& kappa,
                       const std::vector<double>& H) {
  const auto& rd = sigma.roots_d();
  double v = 0.0;
  for (int a = 0; a < sigma.n_positive(); ++a) {
    double ma = to_double(m.on_root(sigma, sigma.positive[a]));
    if (ma == 0.0) continue;
    double ka = to_double(kappa.on_root(sigma, sigma.positive[a]));
    double m2a = to_double(m.on_vector(sigma, rat_vec_scale(sigma.positive_root(a), 2)));
    const auto& alpha = rd[sigma.positive[a]];
    double x = sigma.inner_d(alpha, H);
    double aa = sigma.inner_d(alpha, alpha);
    double sh = std::sinh(x / 2.0), sf = std::sinh(x);
    v += ma * aa / 4.0 * (-ka / (sh * sh) + (2.0 - ma - 2.0 * m2a + 4.0 * ka) / (sf * sf));
  }
  return v;
}

}  // namespace ho
