#include "ho/cfunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ho/errors.hpp"
#include "ho/gamma.hpp"

namespace ho {

namespace {

// k value on the half of a positive root (0 if alpha/2 is not a root)
Rat k_on_half(const RootSystem& rs, const MultiplicityFunction& k, int root_index) {
  RatVec half = rat_vec_scale(rs.roots[root_index], Rat(1, 2));
  return k.on_vector(rs, half);
}

// canonical direction of a rational vector: scaled so the first nonzero
// coordinate is 1; returns (direction, scale) with v = scale * direction
std::pair<RatVec, Rat> canonical_direction(const RatVec& v) {
  Rat scale = 0;
  for (const auto& x : v)
    if (x != 0) {
      scale = x;
      break;
    }
  if (scale == 0) return {v, Rat(1)};
  return {rat_vec_scale(v, Rat(1) / scale), scale};
}

struct HitInfo {
  int positive_index;
  long integer_value;
  RatVec direction;  // differential direction (coroot for lambda-limits, k-form for k-limits)
  Rat scale;         // magnitude of the differential along the canonical direction
};

// Pairs numerator hits with denominator hits whose differentials are
// proportional; on success multiplies (into log-magnitude + phase) the
// first-order limit contributions. Leftover imbalance means a genuine zero
// (extra denominator-Gamma poles) or pole (extra numerator-Gamma poles).
struct LimitOutcome {
  int net = 0;  // (#den hits) - (#num hits): >0 zero, <0 pole
  bool matched = true;
  double log_mag = 0.0;
  double sign = 1.0;
};

LimitOutcome match_hits(std::vector<HitInfo>& num_hits, std::vector<HitInfo>& den_hits) {
  LimitOutcome out;
  out.net = static_cast<int>(den_hits.size()) - static_cast<int>(num_hits.size());
  std::map<RatVec, std::pair<std::vector<HitInfo>, std::vector<HitInfo>>> classes;
  for (const auto& h : num_hits) classes[h.direction].first.push_back(h);
  for (const auto& h : den_hits) classes[h.direction].second.push_back(h);
  if (out.net != 0) return out;
  for (auto& [dir, pair] : classes) {
    if (pair.first.size() != pair.second.size()) {
      out.matched = false;
      return out;
    }
    for (size_t i = 0; i < pair.first.size(); ++i) {
      const HitInfo& a = pair.first[i];   // numerator-arg hit: rGamma factor downstairs
      const HitInfo& b = pair.second[i];  // denominator-arg hit: rGamma factor upstairs
      double lm_b, lm_a;
      int sg_b, sg_a;
      recip_gamma_deriv_log(-b.integer_value, lm_b, sg_b);
      recip_gamma_deriv_log(-a.integer_value, lm_a, sg_a);
      Rat ratio = b.scale / a.scale;
      out.log_mag += lm_b - lm_a + std::log(std::abs(to_double(ratio)));
      out.sign *= sg_b * sg_a * (ratio < 0 ? -1.0 : 1.0);
    }
  }
  return out;
}

}  // namespace

CFunctionValue c_tilde(const RootSystem& rs, const MultiplicityFunction& k, const SpectralParameter& lambda) {
  CFunctionValue out;
  std::vector<HitInfo> num_hits, den_hits;
  Cplx log_acc = 0.0;

  const bool exact = lambda.exact.has_value();
  for (int pi = 0; pi < rs.n_positive(); ++pi) {
    int ri = rs.positive[pi];
    Rat khalf = k_on_half(rs, k, ri);
    Rat ka = k.on_root(rs, ri);
    if (ka == 0) continue;  // Gamma(x)/Gamma(x) is identically 1 as a function of lambda
    Cplx base = pairing_coroot(rs, lambda, ri);
    Cplx a_arg = base + to_double(khalf) / 2.0;
    Cplx b_arg = a_arg + to_double(ka);

    auto classify = [&](const Cplx& arg, const Rat& shift) -> std::optional<long> {
      if (exact) {
        Rat ex = pairing_coroot_exact(rs, *lambda.exact, rs.roots[ri]) + shift;
        if (is_nonpositive_integer(ex)) return numerator(ex).convert_to<long>();
        return std::nullopt;
      }
      double r = std::round(arg.real());
      if (r <= 0.0 && std::abs(arg.real() - r) <= 1e-12 && std::abs(arg.imag()) <= 1e-12)
        return static_cast<long>(r);
      return std::nullopt;
    };

    auto a_hit = classify(a_arg, khalf / 2);
    auto b_hit = classify(b_arg, khalf / 2 + ka);

    auto direction = canonical_direction(coroot(rs, rs.roots[ri]));
    if (a_hit) {
      num_hits.push_back({pi, *a_hit, direction.first, direction.second});
      out.pole_flags.push_back({pi, true, *a_hit});
    } else {
      log_acc += log_gamma(a_arg);
    }
    if (b_hit) {
      den_hits.push_back({pi, *b_hit, direction.first, direction.second});
      out.pole_flags.push_back({pi, false, *b_hit});
    } else {
      log_acc -= log_gamma(b_arg);
    }
  }

  if (num_hits.empty() && den_hits.empty()) {
    out.value = std::exp(log_acc);
    return out;
  }
  auto lim = match_hits(num_hits, den_hits);
  if (lim.net > 0) {
    out.value = 0.0;
    out.limit_used = true;
    return out;
  }
  if (lim.net < 0) {
    out.is_pole = true;
    return out;
  }
  if (!lim.matched)
    fail(Errc::IndeterminateAfterLimit, "simultaneous Gamma hits with non-proportional differentials");
  out.limit_used = true;
  out.value = lim.sign * std::exp(log_acc + lim.log_mag);
  return out;
}

CTildeRho c_tilde_at_rho(const RootSystem& rs, const MultiplicityFunction& k) {
  CTildeRho out;
  RatVec rho = rho_weighted(rs, k);
  const int n_orb = rs.num_orbits;

  std::vector<HitInfo> num_hits, den_hits;
  double log_acc = 0.0, sign_acc = 1.0;

  for (int pi = 0; pi < rs.n_positive(); ++pi) {
    int ri = rs.positive[pi];
    Rat khalf = k_on_half(rs, k, ri);
    Rat ka = k.on_root(rs, ri);
    RatVec cr = coroot(rs, rs.roots[ri]);
    Rat a_arg = rs.inner(rho, cr) + khalf / 2;
    Rat b_arg = a_arg + ka;
    // As a function of k the factor is Gamma(a(k))/Gamma(a(k)+k_a); it is 1
    // only when neither argument sits on a Gamma pole.
    if (ka == 0 && !is_nonpositive_integer(a_arg)) continue;

    // differential of the argument as a linear form in the orbit variables
    auto arg_form = [&](bool with_ka) {
      RatVec form(n_orb, 0);
      for (int pj = 0; pj < rs.n_positive(); ++pj) {
        int rj = rs.positive[pj];
        form[rs.orbit_of[rj]] += rs.inner(rs.roots[rj], cr) / 2;
      }
      RatVec half = rat_vec_scale(rs.roots[ri], Rat(1, 2));
      int half_idx = rs.root_index(half);
      if (half_idx >= 0) form[rs.orbit_of[half_idx]] += Rat(1, 2);
      if (with_ka) form[rs.orbit_of[ri]] += 1;
      return form;
    };

    auto push = [&](const Rat& arg, bool with_ka, bool is_num) {
      auto [dir, scale] = canonical_direction(arg_form(with_ka));
      HitInfo h{pi, numerator(arg).convert_to<long>(), dir, scale};
      (is_num ? num_hits : den_hits).push_back(h);
    };

    if (is_nonpositive_integer(a_arg)) {
      push(a_arg, false, true);
    } else {
      // real log Gamma of a rational argument via the complex routine
      Cplx lg = log_gamma(Cplx(to_double(a_arg), 0.0));
      log_acc += lg.real();
      sign_acc *= std::cos(lg.imag()) < 0 ? -1.0 : 1.0;
    }
    if (is_nonpositive_integer(b_arg)) {
      push(b_arg, true, false);
    } else {
      Cplx lg = log_gamma(Cplx(to_double(b_arg), 0.0));
      log_acc -= lg.real();
      sign_acc *= std::cos(lg.imag()) < 0 ? -1.0 : 1.0;
    }
  }

  if (num_hits.empty() && den_hits.empty()) {
    out.value = sign_acc * std::exp(log_acc);
    return out;
  }
  auto lim = match_hits(num_hits, den_hits);
  if (lim.net > 0) {
    out.zero = true;
    out.limit_used = true;
    out.value = 0.0;
    return out;
  }
  if (lim.net < 0)
    fail(Errc::IndeterminateAfterLimit, "c~(rho(k)) appears to diverge; unmatched numerator Gamma poles");
  if (!lim.matched)
    fail(Errc::IndeterminateAfterLimit, "c~(rho(k)) limit is direction-dependent at first order");
  out.limit_used = true;
  out.value = sign_acc * lim.sign * std::exp(log_acc + lim.log_mag);
  return out;
}

bool is_regular(const RootSystem& rs, const MultiplicityFunction& k) { return !c_tilde_at_rho(rs, k).zero; }

std::complex<double> c_norm(const RootSystem& rs, const MultiplicityFunction& k, const SpectralParameter& lambda) {
  auto rho = c_tilde_at_rho(rs, k);
  if (rho.zero) fail(Errc::NotRegular, "k is not in K_reg: c~(rho(k)) = 0");
  auto ct = c_tilde(rs, k, lambda);
  if (ct.is_pole) fail(Errc::PoleAtNonpositiveInteger, "c~(lambda) has a pole here");
  return ct.value / rho.value;
}

Rat e_exponent(const RootSystem& sigma, const MultiplicityFunction& m, const std::vector<RatVec>& sigma_pi,
               const RatVec& k_pi_values) {
  auto k_at = [&](const RatVec& v) -> Rat {
    for (size_t i = 0; i < sigma_pi.size(); ++i)
      if (sigma_pi[i] == v) return k_pi_values[i];
    return 0;
  };
  for (const auto& b : sigma_pi) {
    bool in_union = sigma.is_root(b) || sigma.is_root(rat_vec_scale(b, Rat(1, 2)));
    if (!in_union) fail(Errc::MC1Violated, "Sigma^pi not contained in Sigma u 2Sigma");
  }
  Rat e = 0;
  for (int pi = 0; pi < sigma.n_positive(); ++pi) {
    const RatVec& a = sigma.positive_root(pi);
    if (sigma.is_root(rat_vec_scale(a, Rat(1, 2)))) continue;  // a in 2Sigma
    Rat m2a = m.on_vector(sigma, rat_vec_scale(a, 2));
    e += k_at(a) - k_at(rat_vec_scale(a, 4)) + m2a / 2;
  }
  return e;
}

}  // namespace ho
