#include <cmath>

#include "doctest.h"
#include "ho/cfunction.hpp"
#include "ho/gamma.hpp"

using namespace ho;

TEST_CASE("c_tilde trivial cases") {
  auto a1 = build_root_system("A", 1);
  auto k0 = constant_multiplicity(a1, 0);
  auto lam = SpectralParameter::from_complex({{0.37, 0.0}, {-0.11, 0.0}});
  auto v = c_tilde(a1, k0, lam);
  CHECK(v.value.real() == doctest::Approx(1.0));
  CHECK(v.value.imag() == doctest::Approx(0.0));
  CHECK(!v.limit_used);
}

TEST_CASE("c_tilde A1 k=1 equals 1/lambda(coroot)") {
  auto a1 = build_root_system("A", 1);
  auto k1 = constant_multiplicity(a1, 1);
  for (double t : {0.3, 1.7, -0.9}) {
    // lambda = t * alpha/2 so lambda(alpha^vee) = t
    auto lam = SpectralParameter::from_complex({{t / 2, 0.1}, {-t / 2, -0.1}});
    Cplx pair = pairing_coroot(a1, lam, a1.positive[0]);
    auto v = c_tilde(a1, k1, lam);
    CHECK(std::abs(v.value - 1.0 / pair) < 1e-12);
  }
}

TEST_CASE("c_tilde_at_rho limits") {
  auto a1 = build_root_system("A", 1);

  // k -> 0 gives |W| = 2 via the first-order limit
  auto k0 = constant_multiplicity(a1, 0);
  auto r0 = c_tilde_at_rho(a1, k0);
  CHECK(r0.limit_used);
  CHECK(r0.value == doctest::Approx(2.0));

  // plain value at k = 1: ctilde(rho) = Gamma(1)/Gamma(2) = 1
  auto r1 = c_tilde_at_rho(a1, constant_multiplicity(a1, 1));
  CHECK(!r1.zero);
  CHECK(r1.value == doctest::Approx(1.0));

  // k = 1/2 regular: Gamma(1/2)/Gamma(1) = sqrt(pi)
  auto rh = c_tilde_at_rho(a1, constant_multiplicity(a1, Rat(1, 2)));
  CHECK(rh.value == doctest::Approx(std::sqrt(3.14159265358979323846)));

  // k = -1/2: Gamma(-1/2)/Gamma(-1) = 0, not regular
  auto rn = c_tilde_at_rho(a1, constant_multiplicity(a1, Rat(-1, 2)));
  CHECK(rn.zero);
  CHECK(!is_regular(a1, constant_multiplicity(a1, Rat(-1, 2))));
  CHECK(is_regular(a1, constant_multiplicity(a1, Rat(1, 2))));
  CHECK(is_regular(a1, k0));

  // |W| limits for A2 and B2
  auto a2 = build_root_system("A", 2);
  CHECK(c_tilde_at_rho(a2, constant_multiplicity(a2, 0)).value == doctest::Approx(6.0));
  auto b2 = build_root_system("B", 2);
  CHECK(c_tilde_at_rho(b2, constant_multiplicity(b2, 0)).value == doctest::Approx(8.0));
  auto g2 = build_root_system("G", 2);
  CHECK(c_tilde_at_rho(g2, constant_multiplicity(g2, 0)).value == doctest::Approx(12.0));
}

TEST_CASE("c_norm basics") {
  auto a1 = build_root_system("A", 1);
  auto k1 = constant_multiplicity(a1, 1);
  // c(rho(k)) = 1
  RatVec rho = rho_weighted(a1, k1);
  auto at_rho = c_norm(a1, k1, SpectralParameter::from_exact(rho));
  CHECK(std::abs(at_rho - 1.0) < 1e-12);

  // A1 k=1: c(lambda) = 1/lambda(alpha^vee)
  auto lam = SpectralParameter::from_complex({{0.8, 0.05}, {-0.8, -0.05}});
  Cplx pair = pairing_coroot(a1, lam, a1.positive[0]);
  CHECK(std::abs(c_norm(a1, k1, lam) - 1.0 / pair) < 1e-12);

  // k = 0: c = 1/|W|
  CHECK(std::abs(c_norm(a1, constant_multiplicity(a1, 0), lam) - 0.5) < 1e-13);

  CHECK_THROWS_AS(c_norm(a1, constant_multiplicity(a1, Rat(-1, 2)), lam), DomainError);
}

TEST_CASE("c_norm at rho via exact detection in a BC system") {
  auto bc1 = build_root_system("BC", 1);
  auto k = multiplicity_from_labels(bc1, {{"short", Rat(5)}, {"double", Rat(-3, 2)}});
  REQUIRE(is_regular(bc1, k));
  RatVec rho = rho_weighted(bc1, k);
  CHECK(std::abs(c_norm(bc1, k, SpectralParameter::from_exact(rho)) - 1.0) < 1e-12);
}

TEST_CASE("e_exponent") {
  // trivial K-type: Sigma^pi = 2 Sigma, k = m_a/2 -> e = 0
  auto bc1 = build_root_system("BC", 1);  // plays Sigma with m_short=4, m_double=3
  auto m = multiplicity_from_labels(bc1, {{"short", Rat(4)}, {"double", Rat(3)}});
  std::vector<RatVec> sig2{{Rat(2)}, {Rat(-2)}, {Rat(4)}, {Rat(-4)}};
  RatVec kv{Rat(2), Rat(2), Rat(3, 2), Rat(3, 2)};
  CHECK(e_exponent(bc1, m, sig2, kv) == 0);

  // sp(p,1) pairing: Sigma^pi = {2a, 4a}, k = (2p-1+n, 1/2-n) -> e = 1+n (plus branch)
  int p = 3, n = 2;
  auto msp = multiplicity_from_labels(bc1, {{"short", Rat(4 * (p - 1))}, {"double", Rat(3)}});
  std::vector<RatVec> sp_pi{{Rat(2)}, {Rat(-2)}, {Rat(4)}, {Rat(-4)}};
  RatVec ksp{Rat(2 * p - 1 + n), Rat(2 * p - 1 + n), Rat(1, 2) - n, Rat(1, 2) - n};
  CHECK(e_exponent(bc1, msp, sp_pi, ksp) == Rat(1 + n));
  RatVec ksm{Rat(2 * p - 1 - n), Rat(2 * p - 1 - n), Rat(1, 2) + n, Rat(1, 2) + n};
  CHECK(e_exponent(bc1, msp, sp_pi, ksm) == Rat(1 - n));

  // so(2r,1): Sigma = {±a} m = 2r-1, pair k_a = -s, k_2a = r+s-1/2 -> e = -s
  auto a1r = custom_root_system({{Rat(1)}, {Rat(-1)}}, rat_identity(1));
  int r = 3, s = 2;
  auto mso = constant_multiplicity(a1r, 2 * r - 1);
  std::vector<RatVec> so_pi{{Rat(1)}, {Rat(-1)}, {Rat(2)}, {Rat(-2)}};
  RatVec kso{Rat(-s), Rat(-s), Rat(r + s) - Rat(1, 2), Rat(r + s) - Rat(1, 2)};
  CHECK(e_exponent(a1r, mso, so_pi, kso) == Rat(-s));

  // MC1 violation
  std::vector<RatVec> bad{{Rat(3)}, {Rat(-3)}};
  CHECK_THROWS_AS(e_exponent(a1r, mso, bad, RatVec{Rat(1), Rat(1)}), DomainError);
}
