#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ho/root_system.hpp"
#include "ho/spectral.hpp"

namespace ho {

struct TruncationPolicy {
  int max_height = 60;
  double tail_tol = 1e-12;
  double wall_margin = 1e-2;
  bool perturb = false;  // nudge lambda off resonances instead of failing
};

// Shared per-(root system, height) tables: cone points over the simple basis,
// ambient vectors, and (mu, alpha) pairings for every positive root.
struct ConeData {
  std::vector<ConePoint> points;
  std::vector<int> shell_begin;                   // index of first point of each height
  std::vector<std::vector<double>> amb;           // ambient coords per point
  std::vector<std::vector<double>> pair_root;     // [point][positive root] = (mu, alpha)
  std::vector<std::vector<int>> root_simple;      // positive roots over the simple basis
  int max_height = 0;
  int index_of(const std::vector<int>& coords) const;  // -1 if absent

 private:
  friend std::shared_ptr<const ConeData> cone_data(const RootSystem& rs, int max_height);
  std::vector<long long> hash_keys_;
};

std::shared_ptr<const ConeData> cone_data(const RootSystem& rs, int max_height);

// Coefficients a_mu of the exponential-series eigenfunction
// e^{lambda+rho(k)} * sum_mu a_mu e^{mu} of L(Sigma',k) on the negative chamber.
struct SeriesCoefficients {
  RootSystemPtr rs;
  MultiplicityFunction k;
  SpectralParameter lambda;  // after any perturbation
  int max_height = 0;
  std::shared_ptr<const ConeData> cone;
  std::vector<std::complex<double>> coeffs;
  std::vector<double> rho;  // ambient coords of rho(k)

  std::complex<double> eigenvalue() const;  // (lambda,lambda) - (rho,rho)
};

// Solves the recurrence
//   ((mu,mu) + 2(mu,lambda)) a_mu
//     = 2 sum_{a>0} k_a sum_{j>=1, mu-ja in cone} (lambda+rho+mu-ja, a) a_{mu-ja}
// with a_0 = 1. Fails with ResonantParameter when some denominator is within
// resonance_tol of zero (or perturbs lambda if policy.perturb).
SeriesCoefficients hc_coefficients(const RootSystemPtr& rs, const MultiplicityFunction& k,
                                   const SpectralParameter& lambda, int max_height,
                                   const TruncationPolicy& policy = {});

// Evaluates sum_mu a_mu e^{(lambda+rho+mu)(H)} for H in the (closed) negative
// chamber, with a geometric tail estimate from the last two height shells.
std::complex<double> phi_eval(const SeriesCoefficients& sc, const std::vector<double>& H,
                              const TruncationPolicy& policy);

// Applies L(Sigma',k) to the truncated series term by term (independent of the
// recurrence path) and returns the maximal relative mismatch against the
// eigenvalue (lambda,lambda)-(rho(k),rho(k)).
double eigen_residual(const SeriesCoefficients& sc);

}  // namespace ho
