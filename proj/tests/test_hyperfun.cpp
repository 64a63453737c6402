#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "ho/gamma.hpp"
#include "ho/hypergeom.hpp"

using namespace ho;

namespace {

RootSystemPtr make(const std::string& fam, int rank) {
  return std::make_shared<RootSystem>(build_root_system(fam, rank));
}

double rel(const Cplx& a, const Cplx& b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("f_eval k=0 closed form") {
  auto b2 = make("B", 2);
  auto lam = SpectralParameter::from_complex({{0.8, 0.3}, {0.25, -0.45}});
  auto W = weyl_elements(*b2);
  std::vector<double> H{1.1, 0.4};
  Cplx expect = 0.0;
  for (const auto& w : W) expect += std::exp(spectral_inner(*b2, weyl_apply(*b2, w, lam), H));
  expect /= static_cast<double>(W.size());
  TruncationPolicy pol;
  pol.max_height = 10;
  Cplx got = f_eval(b2, constant_multiplicity(*b2, 0), lam, H, pol);
  CHECK(rel(got, expect) < 1e-12);
}

TEST_CASE("f_eval A1 k=1 sinh formula") {
  auto a1 = make("A", 1);
  auto k1 = constant_multiplicity(*a1, 1);
  TruncationPolicy pol;
  pol.max_height = 90;
  for (double lv : {0.6, 1.9}) {
    auto lam = SpectralParameter::from_complex({{lv / 2, 0.15}, {-lv / 2, -0.15}});
    for (double u : {0.3, 1.0, 2.4}) {
      std::vector<double> H{u, -u};  // alpha(H) = 2u
      Cplx lamH = spectral_inner(*a1, lam, H);
      Cplx pair = pairing_coroot(*a1, lam, a1->positive[0]);
      Cplx expect = std::sinh(lamH) / (pair * std::sinh(u));  // alpha(H)/2 = u
      Cplx got = f_eval(a1, k1, lam, H, pol);
      CHECK(rel(got, expect) < 1e-10);
    }
  }
}

TEST_CASE("W-invariance in lambda and reflection identity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.15, 0.9);
  for (const char* fam : {"B", "G"}) {
    auto rs = make(fam, 2);
    auto W = weyl_elements(*rs);
    MultiplicityFunction k;
    for (int o = 0; o < rs->num_orbits; ++o) k.by_orbit.push_back(Rat(1 + (o + 1) % 3, 2));
    std::vector<std::complex<double>> lc(rs->ambient_dim);
    for (auto& c : lc) c = {U(rng), U(rng) - 0.5};
    auto lam = SpectralParameter::from_complex(lc);

    std::vector<double> H(rs->ambient_dim);
    if (rs->ambient_dim == 2)
      H = {-2.6, -1.0};
    else
      H = {-2.0, 0.4, 1.6};

    TruncationPolicy pol;
    pol.max_height = 100;
    pol.tail_tol = 1e-10;
    HypergeometricEvaluator F(rs, k, lam, pol);
    Cplx base = F.eval(H);

    for (size_t wi = 0; wi < W.size(); wi += 3) {
      auto wl = weyl_apply(*rs, W[wi], lam);
      Cplx v = f_eval(rs, k, wl, H, pol);
      CHECK(std::abs(v - base) <= 1e-10 * (1.0 + std::abs(base)));
    }

    // F(lambda; -H) = F(-lambda; H)
    std::vector<double> mH(H.size());
    for (size_t i = 0; i < H.size(); ++i) mH[i] = -H[i];
    Cplx lhs = F.eval(mH);
    Cplx rhs = f_eval(rs, k, lam.negated(), H, pol);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("normalization at the origin by even Richardson extrapolation") {
  auto b2 = make("B", 2);
  auto k = multiplicity_from_labels(*b2, {{"short", Rat(3, 2)}, {"long", Rat(3, 4)}});
  auto lam = SpectralParameter::from_complex({{0.8, 0.2}, {0.35, -0.3}});
  TruncationPolicy pol;
  pol.max_height = 420;
  pol.tail_tol = 1e-9;
  HypergeometricEvaluator F(b2, k, lam, pol);
  std::vector<double> H0{-2.2, -0.95};
  auto G = [&](double s) {
    std::vector<double> Hp(2), Hm(2);
    for (int i = 0; i < 2; ++i) {
      Hp[i] = s * H0[i];
      Hm[i] = -s * H0[i];
    }
    return 0.5 * (F.eval(Hp) + F.eval(Hm));
  };
  double s0 = 0.6;
  Cplx g1 = G(s0), g2 = G(s0 / 2), g3 = G(s0 / 4);
  Cplx r = (64.0 * g3 - 20.0 * g2 + g1) / 45.0;
  CHECK(std::abs(r - 1.0) < 1e-4);
}

TEST_CASE("cosh_factor catalog shapes") {
  // sp(p,1): Sigma = BC1 (m_short = 4(p-1), m_double = 3), pair (2p-1+-n, 1/2 -+ n)
  auto bc1 = make("BC", 1);
  int p = 2, n = 3;
  auto m = multiplicity_from_labels(*bc1, {{"short", Rat(4 * (p - 1))}, {"double", Rat(3)}});
  std::vector<RatVec> spi{{Rat(2)}, {Rat(-2)}, {Rat(4)}, {Rat(-4)}};
  RatVec kv{Rat(2 * p - 1 + n), Rat(2 * p - 1 + n), Rat(1, 2) - n, Rat(1, 2) - n};
  auto cf = cosh_factor(*bc1, m, spi, kv);
  // expected (cosh alpha)^{-1-n} at alpha(H) = x
  for (double x : {0.4, 1.3}) {
    std::vector<double> H{x};
    CHECK(cosh_eval(cf, H) == doctest::Approx(std::pow(std::cosh(x), -1.0 - n)).epsilon(1e-12));
  }
  CHECK(cosh_eval(cf, {0.0}) == doctest::Approx(1.0));

  // so(2r,1): Sigma = {+-a} with m = 2r-1, pair k = (-s, r+s-1/2): (cosh a/2)^s
  auto a1 = std::make_shared<RootSystem>(custom_root_system({{Rat(1)}, {Rat(-1)}}, rat_identity(1)));
  int r = 2, s = 3;
  auto mso = constant_multiplicity(*a1, 2 * r - 1);
  std::vector<RatVec> so_pi{{Rat(1)}, {Rat(-1)}, {Rat(2)}, {Rat(-2)}};
  RatVec kso{Rat(-s), Rat(-s), Rat(r + s) - Rat(1, 2), Rat(r + s) - Rat(1, 2)};
  auto cfso = cosh_factor(*a1, mso, so_pi, kso);
  for (double x : {0.7, 2.1}) CHECK(cosh_eval(cfso, {x}) == doctest::Approx(std::pow(std::cosh(x / 2), s)).epsilon(1e-12));

  // trivial K-type: Sigma^pi = 2 Sigma, k = m/2: constant 1
  std::vector<RatVec> tpi{{Rat(2)}, {Rat(-2)}};
  RatVec ktv{Rat(2 * r - 1, 2), Rat(2 * r - 1, 2)};
  auto cft = cosh_factor(*a1, mso, tpi, ktv);
  for (double x : {0.5, 1.9}) CHECK(cosh_eval(cft, {x}) == doctest::Approx(1.0));

  // regularity violation is detected exactly
  RatVec bad = kso;
  bad[2] += Rat(1, 7);
  bad[3] += Rat(1, 7);
  CHECK_THROWS_AS(cosh_factor(*a1, mso, so_pi, bad), DomainError);
}

TEST_CASE("upsilon: trivial K-type reduces to F(2Sigma, m/2)") {
  auto a1 = std::make_shared<RootSystem>(custom_root_system({{Rat(1)}, {Rat(-1)}}, rat_identity(1)));
  auto m = constant_multiplicity(*a1, 3);
  std::vector<RatVec> tpi{{Rat(2)}, {Rat(-2)}};
  RatVec ktv{Rat(3, 2), Rat(3, 2)};
  auto ev = make_matched_evaluator(a1, m, tpi, ktv);
  auto lam = SpectralParameter::from_complex({{0.7, 0.2}});
  TruncationPolicy pol;
  pol.max_height = 70;
  for (double x : {0.8, 1.7}) {
    Cplx u = ev.upsilon(lam, {x}, pol);
    Cplx f = f_eval(ev.sigma_pi, ev.k_pi, lam, {x}, pol);
    CHECK(rel(u, f) < 1e-14);
  }

  // Upsilon(lambda, -H) = Upsilon(-lambda, H)
  Cplx a = ev.upsilon(lam, {-1.2}, pol);
  Cplx b = ev.upsilon(lam.negated(), {1.2}, pol);
  CHECK(rel(a, b) < 1e-12);
}

TEST_CASE("casimir residual: trivial type on A1 group data") {
  auto a1 = std::make_shared<RootSystem>(custom_root_system({{Rat(1)}, {Rat(-1)}}, rat_identity(1)));
  auto m = constant_multiplicity(*a1, 3);  // rank-one group data, m_alpha = 3
  auto kappa = constant_multiplicity(*a1, 0);
  std::vector<RatVec> tpi{{Rat(2)}, {Rat(-2)}};
  RatVec ktv{Rat(3, 2), Rat(3, 2)};
  auto ev = make_matched_evaluator(a1, m, tpi, ktv);
  auto lam = SpectralParameter::from_complex({{0.8, 0.35}});
  TruncationPolicy pol;
  pol.max_height = 80;
  pol.tail_tol = 1e-11;
  auto ups = ev.upsilon_fn(lam, pol);
  double resid = casimir_residual(a1, m, kappa, lam, ups, {-1.1}, 1e-3);
  CHECK(resid < 1e-5);

  // corrupt kappa by 0.1: residual blows past 1e-2
  auto kappa_bad = kappa;
  kappa_bad.by_orbit[0] = Rat(-1, 10);
  double resid_bad = casimir_residual(a1, m, kappa_bad, lam, ups, {-1.1}, 1e-3);
  CHECK(resid_bad >= 1e-2);

  CHECK_THROWS_AS(casimir_residual(a1, m, kappa, lam, ups, {-1.1}, 0.5), DomainError);
}

TEST_CASE("schroedinger potentials agree for a matched pair") {
  // so(2r,1) r=2 s=1: Sigma = {+-a} m=3, kappa = -s(s+2r-2)/(2r-1) = -1
  auto a1 = std::make_shared<RootSystem>(custom_root_system({{Rat(1)}, {Rat(-1)}}, rat_identity(1)));
  auto m = constant_multiplicity(*a1, 3);
  auto kappa = constant_multiplicity(*a1, -1);
  std::vector<RatVec> so_pi{{Rat(1)}, {Rat(-1)}, {Rat(2)}, {Rat(-2)}};
  RatVec kso{Rat(-1), Rat(-1), Rat(5, 2), Rat(5, 2)};
  auto ev = make_matched_evaluator(a1, m, so_pi, kso);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.2, 2.5);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> H{U(rng)};
    double v1 = potential_hyper(*ev.sigma_pi, ev.k_pi, H);
    double v2 = potential_group(*a1, m, kappa, H);
    CHECK(std::abs(v1 - v2) <= 1e-12 * (1.0 + std::abs(v1)));
  }
}

TEST_CASE("asymptotic_c approaches c_norm") {
  auto a1 = make("A", 1);
  auto k1 = constant_multiplicity(*a1, 1);
  auto lam = SpectralParameter::from_complex({{0.45, 0.0}, {-0.45, 0.0}});  // lambda(alpha^vee) = 0.9
  TruncationPolicy pol;
  pol.max_height = 60;
  HypergeometricEvaluator F(a1, k1, lam, pol);
  std::vector<double> H{0.5, -0.5};  // alpha(H) = 1
  Cplx target = c_norm(*a1, k1, lam);
  CHECK(std::abs(target - 1.0 / pairing_coroot(*a1, lam, a1->positive[0])) < 1e-12);
  double prev = 1e9;
  for (double t : {4.0, 8.0, 16.0}) {
    double err = std::abs(asymptotic_c(F, H, t) - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);

  // k = 0: prelimit tends to 1/|W|
  auto F0 = HypergeometricEvaluator(a1, constant_multiplicity(*a1, 0), lam, pol);
  CHECK(std::abs(asymptotic_c(F0, H, 16.0) - 0.5) < 1e-6);
}

TEST_CASE("F-level scale invariance under Gram rescaling") {
  auto b2 = build_root_system("B", 2);
  auto scaled = b2;
  for (auto& row : scaled.gram)
    for (auto& x : row) x *= 7;
  auto rs1 = std::make_shared<RootSystem>(b2);
  auto rs2 = std::make_shared<RootSystem>(scaled);
  auto k = multiplicity_from_labels(b2, {{"short", Rat(1)}, {"long", Rat(1, 2)}});
  auto lam = SpectralParameter::from_complex({{0.75, 0.2}, {0.3, -0.1}});
  TruncationPolicy pol;
  pol.max_height = 90;
  pol.tail_tol = 1e-10;
  std::vector<double> H1{-1.4, -0.5};
  std::vector<double> H2(2);
  for (int i = 0; i < 2; ++i) H2[i] = H1[i] / 7.0;  // same functionals alpha(H)
  Cplx v1 = f_eval(rs1, k, lam, H1, pol);
  Cplx v2 = f_eval(rs2, k, lam, H2, pol);
  // lambda as a coordinate vector pairs through the Gram matrix, so
  // lambda(H) is unchanged under (G, H) -> (cG, H/c)
  CHECK(rel(v1, v2) < 1e-9);
}
