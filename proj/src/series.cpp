#include "ho/series.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "ho/errors.hpp"

namespace ho {

namespace {

// packs nonnegative simple coordinates into one 64-bit key; the per-rank base
// bounds the representable height (ample for every rank the series touches)
long long pack_coords(const std::vector<int>& c) {
  const int rank = static_cast<int>(c.size());
  const long long base = 1LL << (rank ? 62 / rank : 1);
  long long key = 0;
  for (int v : c) {
    if (v + 1 >= base) fail(Errc::HeightOverflow, "cone coordinates exceed the packing base for this rank");
    key = key * base + (v + 1);
  }
  return key;
}

std::mutex g_cone_mutex;
std::map<std::pair<std::string, int>, std::shared_ptr<const ConeData>> g_cone_cache;

std::mutex g_series_mutex;
std::list<std::pair<std::string, std::shared_ptr<const SeriesCoefficients>>> g_series_lru;
constexpr size_t kSeriesCacheMax = 128;

std::string series_key(const RootSystem& rs, const MultiplicityFunction& k, const SpectralParameter& lam,
                       int max_height) {
  std::ostringstream os;
  os << rs.cache_key() << "#";
  for (const auto& v : k.by_orbit) os << rat_to_string(v) << ",";
  os << "#" << std::hexfloat;
  for (const auto& c : lam.coords) os << c.real() << "," << c.imag() << ";";
  os << "#" << max_height;
  return os.str();
}

}  // namespace

int ConeData::index_of(const std::vector<int>& coords) const {
  for (int v : coords)
    if (v < 0) return -1;
  long long key = pack_coords(coords);
  auto it = std::lower_bound(hash_keys_.begin(), hash_keys_.end(), key);
  if (it == hash_keys_.end() || *it != key) return -1;
  return static_cast<int>(it - hash_keys_.begin());
}

std::shared_ptr<const ConeData> cone_data(const RootSystem& rs, int max_height) {
  {
    std::lock_guard<std::mutex> lock(g_cone_mutex);
    auto it = g_cone_cache.find({rs.cache_key(), max_height});
    if (it != g_cone_cache.end()) return it->second;
  }
  auto cd = std::make_shared<ConeData>();
  cd->max_height = max_height;
  cd->points = enumerate_cone(rs, max_height);
  const int r = rs.rank();
  const int n = rs.ambient_dim;

  // sort by packed key for index lookup, then rebuild the graded order:
  // enumerate_cone is graded by (height, lex); packed keys are not monotone in
  // that order, so we sort points by key and store shell offsets separately.
  std::sort(cd->points.begin(), cd->points.end(),
            [](const ConePoint& a, const ConePoint& b) { return pack_coords(a.coords) < pack_coords(b.coords); });
  cd->hash_keys_.resize(cd->points.size());
  for (size_t i = 0; i < cd->points.size(); ++i) cd->hash_keys_[i] = pack_coords(cd->points[i].coords);

  std::vector<std::vector<double>> simple_amb(r, std::vector<double>(n));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) simple_amb[i][j] = to_double(rs.simple_root(i)[j]);

  cd->amb.assign(cd->points.size(), std::vector<double>(n, 0.0));
  for (size_t p = 0; p < cd->points.size(); ++p)
    for (int i = 0; i < r; ++i)
      if (cd->points[p].coords[i])
        for (int j = 0; j < n; ++j) cd->amb[p][j] += cd->points[p].coords[i] * simple_amb[i][j];

  cd->root_simple = rs.positive_simple_coords;
  const int npos = rs.n_positive();
  cd->pair_root.assign(cd->points.size(), std::vector<double>(npos, 0.0));
  const auto& rd = rs.roots_d();
  for (int a = 0; a < npos; ++a) {
    // G * alpha once
    std::vector<double> Ga(n, 0.0);
    const auto& G = rs.gram_d();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Ga[i] += G[i][j] * rd[rs.positive[a]][j];
    for (size_t p = 0; p < cd->points.size(); ++p) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += cd->amb[p][j] * Ga[j];
      cd->pair_root[p][a] = s;
    }
  }

  cd->shell_begin.assign(max_height + 2, 0);
  {
    // counts per height
    std::vector<int> cnt(max_height + 1, 0);
    for (const auto& pt : cd->points) cnt[pt.height]++;
    for (int h = 0; h <= max_height; ++h) cd->shell_begin[h + 1] = cd->shell_begin[h] + cnt[h];
  }

  std::lock_guard<std::mutex> lock(g_cone_mutex);
  g_cone_cache[{rs.cache_key(), max_height}] = cd;
  return cd;
}

std::complex<double> SeriesCoefficients::eigenvalue() const {
  std::complex<double> ll = 0.0;
  const auto& G = rs->gram_d();
  const size_t n = lambda.coords.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) ll += lambda.coords[i] * G[i][j] * lambda.coords[j];
  double rr = rs->inner_d(rho, rho);
  return ll - rr;
}

namespace {

SeriesCoefficients compute_series(const RootSystemPtr& rs, const MultiplicityFunction& k,
                                  const SpectralParameter& lambda, int max_height,
                                  const TruncationPolicy& policy, bool may_perturb) {
  if (max_height < 0 || max_height > 5000) fail(Errc::HeightOverflow, "max_height out of range");
  SeriesCoefficients sc;
  sc.rs = rs;
  sc.k = k;
  sc.lambda = lambda;
  sc.max_height = max_height;
  sc.cone = cone_data(*rs, max_height);

  const int n = rs->ambient_dim;
  RatVec rho_exact = rho_weighted(*rs, k);
  sc.rho.resize(n);
  for (int i = 0; i < n; ++i) sc.rho[i] = to_double(rho_exact[i]);

  const auto& cd = *sc.cone;
  const int npos = rs->n_positive();
  const auto& G = rs->gram_d();
  const auto& rd = rs->roots_d();

  // (lambda, alpha) and (rho, alpha) per positive root
  std::vector<std::complex<double>> lam_root(npos);
  std::vector<double> rho_root(npos), k_root(npos);
  double lam_norm2 = 0.0;
  for (const auto& c : lambda.coords) lam_norm2 += std::norm(c);
  for (int a = 0; a < npos; ++a) {
    const auto& alpha = rd[rs->positive[a]];
    std::complex<double> s = 0.0;
    double sr = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s += lambda.coords[i] * G[i][j] * alpha[j];
        sr += sc.rho[i] * G[i][j] * alpha[j];
      }
    lam_root[a] = s;
    rho_root[a] = sr;
    k_root[a] = to_double(k.on_root(*rs, rs->positive[a]));
  }

  // resonance scan: (mu,mu) + 2(mu,lambda) over all nonzero cone points
  const double res_tol = 1e-8 * (1.0 + lam_norm2);
  for (size_t p = 0; p < cd.points.size(); ++p) {
    if (cd.points[p].height == 0) continue;
    double mumu = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mumu += cd.amb[p][i] * G[i][j] * cd.amb[p][j];
    std::complex<double> mulam = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mulam += cd.amb[p][i] * G[i][j] * lambda.coords[j];
    if (std::abs(mumu + 2.0 * mulam) <= res_tol) {
      if (may_perturb && policy.perturb) {
        // fixed de-resonating direction: +1e-6 i * rho(1)
        MultiplicityFunction ones = constant_multiplicity(*rs, 1);
        RatVec rho1 = rho_weighted(*rs, ones);
        SpectralParameter nudged = lambda;
        for (int i = 0; i < n; ++i) nudged.coords[i] += std::complex<double>(0.0, 1e-6 * to_double(rho1[i]));
        nudged.exact.reset();
        return compute_series(rs, k, nudged, max_height, policy, false);
      }
      std::ostringstream os;
      os << "resonant lambda at mu = [";
      for (size_t i = 0; i < cd.points[p].coords.size(); ++i)
        os << (i ? "," : "") << cd.points[p].coords[i];
      os << "] (|(mu,mu)+2(mu,lambda)| <= " << res_tol << ")";
      fail(Errc::ResonantParameter, os.str());
    }
  }

  sc.coeffs.assign(cd.points.size(), 0.0);
  // process points in graded order: build an index list sorted by height
  std::vector<int> order(cd.points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cd.points[a].height < cd.points[b].height; });

  std::vector<int> scratch(rs->rank());
  for (int idx : order) {
    const auto& pt = cd.points[idx];
    if (pt.height == 0) {
      sc.coeffs[idx] = 1.0;
      continue;
    }
    double mumu = 0.0;
    std::complex<double> mulam = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mumu += cd.amb[idx][i] * G[i][j] * cd.amb[idx][j];
        mulam += cd.amb[idx][i] * G[i][j] * lambda.coords[j];
      }
    std::complex<double> denom = mumu + 2.0 * mulam;
    std::complex<double> acc = 0.0;
    for (int a = 0; a < npos; ++a) {
      if (k_root[a] == 0.0) continue;
      const auto& sa = cd.root_simple[a];
      scratch = pt.coords;
      for (int j = 1;; ++j) {
        bool ok = true;
        for (size_t t = 0; t < sa.size(); ++t) {
          scratch[t] -= sa[t];
          if (scratch[t] < 0) ok = false;
        }
        if (!ok) break;
        int prev = cd.index_of(scratch);
        if (prev < 0) break;
        // (lambda + rho + nu, alpha) with nu = mu - j*alpha
        std::complex<double> pairing = lam_root[a] + rho_root[a] + cd.pair_root[prev][a];
        acc += k_root[a] * pairing * sc.coeffs[prev];
        (void)j;
      }
    }
    sc.coeffs[idx] = 2.0 * acc / denom;
  }
  return sc;
}

}  // namespace

SeriesCoefficients hc_coefficients(const RootSystemPtr& rs, const MultiplicityFunction& k,
                                   const SpectralParameter& lambda, int max_height,
                                   const TruncationPolicy& policy) {
  std::string key = series_key(*rs, k, lambda, max_height);
  {
    std::lock_guard<std::mutex> lock(g_series_mutex);
    for (auto it = g_series_lru.begin(); it != g_series_lru.end(); ++it) {
      if (it->first == key) {
        auto hit = it->second;
        g_series_lru.splice(g_series_lru.begin(), g_series_lru, it);
        return *hit;
      }
    }
  }
  auto sc = std::make_shared<SeriesCoefficients>(compute_series(rs, k, lambda, max_height, policy, true));
  {
    std::lock_guard<std::mutex> lock(g_series_mutex);
    g_series_lru.emplace_front(key, sc);
    while (g_series_lru.size() > kSeriesCacheMax) g_series_lru.pop_back();
  }
  return *sc;
}

std::complex<double> phi_eval(const SeriesCoefficients& sc, const std::vector<double>& H,
                              const TruncationPolicy& policy) {
  const RootSystem& rs = *sc.rs;
  const int n = rs.ambient_dim;
  const auto& G = rs.gram_d();
  std::vector<double> GH(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) GH[i] += G[i][j] * H[j];

  const auto& rd = rs.roots_d();
  for (int a = 0; a < rs.n_positive(); ++a) {
    double av = 0.0;
    for (int j = 0; j < n; ++j) av += rd[rs.positive[a]][j] * GH[j];
    if (av > 0.0) fail(Errc::OutsideNegativeChamber, "H is not in the negative chamber");
    if (av > -policy.wall_margin)
      fail(Errc::OutsideNegativeChamber, "H is within wall_margin of a chamber wall");
  }

  const auto& cd = *sc.cone;
  std::complex<double> base = 0.0;
  for (int i = 0; i < n; ++i) base += (sc.lambda.coords[i] + sc.rho[i]) * GH[i];
  std::complex<double> scale = std::exp(base);

  std::vector<double> shell_abs(cd.max_height + 1, 0.0);
  std::complex<double> total = 0.0;
  for (size_t p = 0; p < cd.points.size(); ++p) {
    double muH = 0.0;
    for (int i = 0; i < n; ++i) muH += cd.amb[p][i] * GH[i];
    std::complex<double> term = sc.coeffs[p] * std::exp(muH);
    total += term;
    shell_abs[cd.points[p].height] += std::abs(term);
  }

  if (cd.max_height >= 1) {
    double s_last = shell_abs[cd.max_height];
    double s_prev = shell_abs[cd.max_height - 1];
    double tail;
    if (s_last == 0.0) {
      tail = 0.0;
    } else if (s_prev <= s_last) {
      fail(Errc::TailNotConverged, "height shells are not decreasing; increase max_height or move H inward");
    } else {
      double ratio = s_last / s_prev;
      tail = s_last * ratio / (1.0 - ratio);
    }
    if (tail > policy.tail_tol * std::max(1.0, std::abs(total)))
      fail(Errc::TailNotConverged, "estimated series tail exceeds tail_tol (geometric extrapolation)");
  }
  return scale * total;
}

double eigen_residual(const SeriesCoefficients& sc) {
  const RootSystem& rs = *sc.rs;
  const auto& cd = *sc.cone;
  const int n = rs.ambient_dim;
  const int npos = rs.n_positive();
  const auto& G = rs.gram_d();
  const auto& rd = rs.roots_d();

  std::vector<std::complex<double>> lam_root(npos);
  std::vector<double> rho_root(npos), k_root(npos);
  for (int a = 0; a < npos; ++a) {
    const auto& alpha = rd[rs.positive[a]];
    std::complex<double> s = 0.0;
    double sr = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s += sc.lambda.coords[i] * G[i][j] * alpha[j];
        sr += sc.rho[i] * G[i][j] * alpha[j];
      }
    lam_root[a] = s;
    rho_root[a] = sr;
    k_root[a] = to_double(sc.k.on_root(rs, rs.positive[a]));
  }

  // (nu_mu, nu_mu) with nu = lambda + rho + mu
  std::vector<std::complex<double>> applied(cd.points.size(), 0.0);
  std::vector<std::complex<double>> lr(n);
  for (int i = 0; i < n; ++i) lr[i] = sc.lambda.coords[i] + sc.rho[i];
  for (size_t p = 0; p < cd.points.size(); ++p) {
    std::complex<double> nn = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nn += (lr[i] + cd.amb[p][i]) * G[i][j] * (lr[j] + cd.amb[p][j]);
    applied[p] = nn * sc.coeffs[p];
  }

  // k_a coth(a/2) H_a applied as -(1 + 2 sum_{j>=1} e^{j a}) times the
  // derivative series c_p = (nu_p, a) a_p : a series product, not the recurrence
  std::vector<int> scratch(rs.rank());
  for (int a = 0; a < npos; ++a) {
    if (k_root[a] == 0.0) continue;
    std::vector<std::complex<double>> deriv(cd.points.size());
    for (size_t p = 0; p < cd.points.size(); ++p)
      deriv[p] = (lam_root[a] + rho_root[a] + cd.pair_root[p][a]) * sc.coeffs[p];
    const auto& sa = cd.root_simple[a];
    for (size_t p = 0; p < cd.points.size(); ++p) {
      std::complex<double> conv = -deriv[p];
      scratch = cd.points[p].coords;
      while (true) {
        bool ok = true;
        for (size_t t = 0; t < sa.size(); ++t) {
          scratch[t] -= sa[t];
          if (scratch[t] < 0) ok = false;
        }
        if (!ok) break;
        int prev = cd.index_of(scratch);
        if (prev < 0) break;
        conv -= 2.0 * deriv[prev];
      }
      applied[p] += k_root[a] * conv;
    }
  }

  std::complex<double> eig = sc.eigenvalue();
  double worst = 0.0;
  for (size_t p = 0; p < cd.points.size(); ++p) {
    double resid = std::abs(applied[p] - eig * sc.coeffs[p]);
    double scale = 1.0 + std::abs(eig * sc.coeffs[p]) + std::abs(applied[p]);
    worst = std::max(worst, resid / scale);
  }
  return worst;
}

}  // namespace ho
