#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "ho/cfunction.hpp"
#include "ho/series.hpp"

namespace ho {

// F(Sigma',k,lambda) assembled from the connection formula
//   F = c~(rho(k))^{-1} sum_{w in W} c~(-w lambda) Phi(w lambda; H'),
// with H' the chamber image of H. Immutable after construction; evaluation at
// many H reuses the per-w coefficient tables.
class HypergeometricEvaluator {
 public:
  HypergeometricEvaluator(RootSystemPtr rs, MultiplicityFunction k, SpectralParameter lambda,
                          TruncationPolicy policy = {});

  std::complex<double> eval(const std::vector<double>& H) const;

  const RootSystem& root_system() const { return *rs_; }
  const TruncationPolicy& policy() const { return policy_; }
  const SpectralParameter& lambda() const { return lambda_; }
  double ctilde_rho() const { return ctilde_rho_; }
  // ambient coordinates of rho(k)
  const std::vector<double>& rho_k() const { return tables_.front().rho; }

 private:
  RootSystemPtr rs_;
  MultiplicityFunction k_;
  SpectralParameter lambda_;
  TruncationPolicy policy_;
  std::vector<SeriesCoefficients> tables_;
  std::vector<std::complex<double>> ctilde_neg_;
  double ctilde_rho_ = 0.0;
};

std::complex<double> f_eval(const RootSystemPtr& rs, const MultiplicityFunction& k,
                            const SpectralParameter& lambda, const std::vector<double>& H,
                            const TruncationPolicy& policy = {});

// Nowhere-vanishing gauge factor prod (cosh a/2)^{-k^pi_a} (cosh a)^{k^pi_{4a}-m_{2a}/2}
// over a in Sigma^+ \ 2Sigma^+. Requires Sigma^pi inside Sigma u 2Sigma and the
// exact exponent-sum relation (m_a+m_{2a})/2 = k_a + k_{2a} + k_{4a}.
struct CoshFactor {
  struct Term {
    std::vector<double> g_alpha;  // Gram * alpha, so alpha(H) = dot(g_alpha, H)
    double exp_half;              // exponent of cosh(alpha(H)/2)
    double exp_full;              // exponent of cosh(alpha(H))
  };
  std::vector<Term> terms;
};

CoshFactor cosh_factor(const RootSystem& sigma, const MultiplicityFunction& m,
                       const std::vector<RatVec>& sigma_pi, const RatVec& k_pi_values);

double cosh_eval(const CoshFactor& cf, const std::vector<double>& H);

// A validated (Sigma, m) -> (Sigma^pi, k^pi) bundle ready for evaluation.
struct MatchedEvaluator {
  RootSystemPtr sigma;
  MultiplicityFunction m;
  RootSystemPtr sigma_pi;
  MultiplicityFunction k_pi;
  CoshFactor cosh;

  std::complex<double> upsilon(const SpectralParameter& lambda, const std::vector<double>& H,
                               const TruncationPolicy& policy = {}) const;

  // reusable closure: builds the F evaluator once
  std::function<std::complex<double>(const std::vector<double>&)> upsilon_fn(
      const SpectralParameter& lambda, const TruncationPolicy& policy = {}) const;
};

// Builds the matched evaluator from explicit Sigma^pi roots and k values.
MatchedEvaluator make_matched_evaluator(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                                        const std::vector<RatVec>& sigma_pi, const RatVec& k_pi_values);

// |L Upsilon - ((lambda,lambda) - |rho|^2) Upsilon| / (1 + |Upsilon|) with the
// radial operator L = Omega + sum_a m_a (coth(a) H_a - kappa_a |a|^2 / (4 cosh^2(a/2)))
// applied by central finite differences of step h.
double casimir_residual(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                        const MultiplicityFunction& kappa, const SpectralParameter& lambda,
                        const std::function<std::complex<double>(const std::vector<double>&)>& upsilon,
                        const std::vector<double>& H, double h);

// e^{t(-lambda+rho(k))(H)} F(lambda; tH) for H in the positive chamber.
std::complex<double> asymptotic_c(const HypergeometricEvaluator& F, const std::vector<double>& H, double t);

// Schroedinger-form potentials; equality of the two routes at interior points
// is the numerical shadow of the matching equations.
double potential_hyper(const RootSystem& rs_pi, const MultiplicityFunction& k_pi, const std::vector<double>& H);
double potential_group(const RootSystem& sigma, const MultiplicityFunction& m, const MultiplicityFunction& kappa,
                       const std::vector<double>& H);

}  // namespace ho
