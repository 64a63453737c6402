#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ho/root_system.hpp"

namespace ho {

// lambda in the complexified dual space, in ambient coordinates. When built
// from rational data the exact coordinates are kept so that Gamma-argument
// pole detection can be exact.
struct SpectralParameter {
  std::vector<std::complex<double>> coords;
  std::optional<RatVec> exact;

  static SpectralParameter from_exact(const RatVec& v) {
    SpectralParameter s;
    s.exact = v;
    s.coords.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i) s.coords[i] = to_double(v[i]);
    return s;
  }
  static SpectralParameter from_complex(std::vector<std::complex<double>> v) {
    SpectralParameter s;
    s.coords = std::move(v);
    return s;
  }

  SpectralParameter negated() const {
    SpectralParameter s = *this;
    for (auto& c : s.coords) c = -c;
    if (s.exact) *s.exact = rat_vec_scale(*s.exact, -1);
    return s;
  }

  bool is_real() const {
    for (const auto& c : coords)
      if (c.imag() != 0.0) return false;
    return true;
  }
};

// (lambda, v) for a real vector v, via the Gram form
inline std::complex<double> spectral_inner(const RootSystem& rs, const SpectralParameter& lam,
                                           const std::vector<double>& v) {
  const auto& G = rs.gram_d();
  std::complex<double> s = 0.0;
  for (size_t i = 0; i < lam.coords.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) s += lam.coords[i] * G[i][j] * v[j];
  return s;
}

// lambda(alpha^vee) = 2 (lambda, alpha) / (alpha, alpha)
inline std::complex<double> pairing_coroot(const RootSystem& rs, const SpectralParameter& lam, int root_index) {
  const auto& a = rs.roots_d()[root_index];
  return 2.0 * spectral_inner(rs, lam, a) / rs.inner_d(a, a);
}

// exact variant (requires lam.exact)
inline Rat pairing_coroot_exact(const RootSystem& rs, const RatVec& lam, const RatVec& alpha) {
  return 2 * rs.inner(lam, alpha) / rs.inner(alpha, alpha);
}

// w . lambda via an exact Weyl matrix
inline SpectralParameter weyl_apply(const RootSystem&, const RatMat& w, const SpectralParameter& lam) {
  SpectralParameter out;
  size_t n = lam.coords.size();
  out.coords.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double wij = to_double(w[i][j]);
      if (wij != 0.0) out.coords[i] += wij * lam.coords[j];
    }
  if (lam.exact) out.exact = rat_matvec(w, *lam.exact);
  return out;
}

}  // namespace ho
