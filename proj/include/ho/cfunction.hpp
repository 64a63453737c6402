#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ho/root_system.hpp"
#include "ho/spectral.hpp"

namespace ho {

struct PoleFlag {
  int positive_index;   // which positive root's Gamma factor
  bool in_numerator;    // numerator Gamma(lambda(a^vee)+k_{a/2}/2) vs denominator
  long integer_value;   // the nonpositive integer hit
};

struct CFunctionValue {
  std::complex<double> value{0.0, 0.0};
  bool limit_used = false;
  bool is_pole = false;  // c-tilde has a pole at this lambda (value meaningless)
  std::vector<PoleFlag> pole_flags;
};

// c~(Sigma',k,lambda) = prod_{a>0} Gamma(lambda(a^vee) + k_{a/2}/2)
//                               / Gamma(lambda(a^vee) + k_{a/2}/2 + k_a).
// Gamma-argument hits at nonpositive integers are detected (exactly for
// rational lambda) and resolved by first-order expansion of the reciprocal
// Gamma where a matching is possible.
CFunctionValue c_tilde(const RootSystem& rs, const MultiplicityFunction& k, const SpectralParameter& lambda);

struct CTildeRho {
  double value = 0.0;
  bool limit_used = false;
  bool zero = false;  // c~(rho(k)) = 0, i.e. k not regular
};

// c~(Sigma',k,rho(k)) with the exact-limit treatment in the k-variables.
CTildeRho c_tilde_at_rho(const RootSystem& rs, const MultiplicityFunction& k);

bool is_regular(const RootSystem& rs, const MultiplicityFunction& k);

// c(lambda) = c~(lambda)/c~(rho(k)); requires k regular
std::complex<double> c_norm(const RootSystem& rs, const MultiplicityFunction& k, const SpectralParameter& lambda);

// e(Sigma^pi, k^pi) = sum_{a in Sigma^+ \ 2Sigma^+} (k^pi_a - k^pi_{4a} + m_{2a}/2).
// k^pi is given by explicit roots and values; roots must lie in Sigma u 2Sigma.
Rat e_exponent(const RootSystem& sigma, const MultiplicityFunction& m, const std::vector<RatVec>& sigma_pi,
               const RatVec& k_pi_values);

}  // namespace ho
