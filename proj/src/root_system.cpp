#include "ho/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "ho/errors.hpp"

namespace ho {

RatMat rat_identity(int n) {
  RatMat I(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

RatMat rat_matmul(const RatMat& A, const RatMat& B) {
  size_t n = A.size(), m = B[0].size(), k = B.size();
  RatMat C(n, RatVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

RatVec rat_matvec(const RatMat& A, const RatVec& x) {
  RatVec y(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (A[i][j] != 0 && x[j] != 0) y[i] += A[i][j] * x[j];
  return y;
}

Rat RootSystem::inner(const RatVec& a, const RatVec& b) const {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (gram[i][j] != 0 && b[j] != 0) s += a[i] * gram[i][j] * b[j];
  }
  return s;
}

double RootSystem::inner_d(const std::vector<double>& a, const std::vector<double>& b) const {
  const auto& G = gram_d();
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) s += a[i] * G[i][j] * b[j];
  return s;
}

int RootSystem::root_index(const RatVec& v) const {
  if (root_lookup_.empty()) {
    for (size_t i = 0; i < roots.size(); ++i) root_lookup_[roots[i]] = static_cast<int>(i);
  }
  auto it = root_lookup_.find(v);
  return it == root_lookup_.end() ? -1 : it->second;
}

RatVec RootSystem::reflect(const RatVec& alpha, const RatVec& x) const {
  Rat c = 2 * inner(x, alpha) / inner(alpha, alpha);
  RatVec out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= c * alpha[i];
  return out;
}

RatMat RootSystem::reflection_matrix(const RatVec& alpha) const {
  int n = ambient_dim;
  RatMat M = rat_identity(n);
  Rat nn = inner(alpha, alpha);
  // M = I - 2/((a,a)) * alpha (G alpha)^T
  RatVec Ga(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ga[i] += gram[i][j] * alpha[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i][j] -= 2 * alpha[i] * Ga[j] / nn;
  return M;
}

const std::string& RootSystem::cache_key() const {
  if (cache_key_.empty()) {
    std::ostringstream os;
    os << family_label << "|" << ambient_dim << "|";
    for (const auto& row : gram)
      for (const auto& x : row) os << rat_to_string(x) << ",";
    os << "|";
    for (const auto& r : roots)
      for (const auto& x : r) os << rat_to_string(x) << ",";
    cache_key_ = os.str();
  }
  return cache_key_;
}

const std::vector<std::vector<double>>& RootSystem::roots_d() const {
  if (roots_d_.empty()) {
    roots_d_.resize(roots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
      roots_d_[i].resize(ambient_dim);
      for (int j = 0; j < ambient_dim; ++j) roots_d_[i][j] = to_double(roots[i][j]);
    }
  }
  return roots_d_;
}

const std::vector<std::vector<double>>& RootSystem::gram_d() const {
  if (gram_d_.empty()) {
    gram_d_.resize(ambient_dim, std::vector<double>(ambient_dim));
    for (int i = 0; i < ambient_dim; ++i)
      for (int j = 0; j < ambient_dim; ++j) gram_d_[i][j] = to_double(gram[i][j]);
  }
  return gram_d_;
}

const std::vector<std::vector<double>>& RootSystem::gram_inv_d() const {
  if (gram_inv_d_.empty()) {
    auto inv = invert_exact(gram);
    if (!inv) fail(Errc::InvalidArgument, "singular Gram matrix");
    gram_inv_d_.resize(ambient_dim, std::vector<double>(ambient_dim));
    for (int i = 0; i < ambient_dim; ++i)
      for (int j = 0; j < ambient_dim; ++j) gram_inv_d_[i][j] = to_double((*inv)[i][j]);
  }
  return gram_inv_d_;
}

namespace {

bool lex_positive(const RatVec& v) {
  for (const auto& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

// ratio c with b = c*a, or nullopt if not proportional
std::optional<Rat> proportionality(const RatVec& a, const RatVec& b) {
  Rat c = 0;
  bool have = false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      if (b[i] != 0) return std::nullopt;
      continue;
    }
    Rat r = b[i] / a[i];
    if (!have) {
      c = r;
      have = true;
    } else if (r != c) {
      return std::nullopt;
    }
  }
  if (!have) return std::nullopt;
  return c;
}

std::vector<RatVec> dedupe_sorted(std::vector<RatVec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Integer-scaled view for the hot validation loops. Falls back to nullopt if
// coordinates cannot be scaled to small integers.
struct IntView {
  std::vector<std::vector<long long>> vecs;
  std::vector<std::vector<long long>> gram;
};

std::optional<IntView> int_view(const std::vector<RatVec>& vectors, const RatMat& gram) {
  Int scale = 1, gscale = 1;
  for (const auto& v : vectors)
    for (const auto& x : v) scale = boost::multiprecision::lcm(scale, denominator(x));
  for (const auto& row : gram)
    for (const auto& x : row) gscale = boost::multiprecision::lcm(gscale, denominator(x));
  if (scale > 64 || gscale > 64) return std::nullopt;
  IntView out;
  out.vecs.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<long long> iv(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      Rat s = v[i] * Rat(scale);
      if (!is_integer(s)) return std::nullopt;
      Int n = numerator(s);
      if (n > 1000000 || n < -1000000) return std::nullopt;
      iv[i] = n.convert_to<long long>();
    }
    out.vecs.push_back(std::move(iv));
  }
  for (const auto& row : gram) {
    std::vector<long long> ir(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
      Rat s = row[i] * Rat(gscale);
      if (!is_integer(s)) return std::nullopt;
      Int n = numerator(s);
      if (n > 1000000 || n < -1000000) return std::nullopt;
      ir[i] = n.convert_to<long long>();
    }
    out.gram.push_back(std::move(ir));
  }
  return out;
}

long long idot(const IntView& iv, const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) s += a[i] * iv.gram[i][j] * b[j];
  }
  return s;
}

}  // namespace

ValidationReport validate_root_system(const std::vector<RatVec>& vectors, const RatMat& gram) {
  ValidationReport rep;
  auto vecs = dedupe_sorted(vectors);
  if (vecs.empty()) {
    rep.nonzero_ok = false;
    rep.detail = "empty set";
    return rep;
  }
  size_t dim = vecs[0].size();
  for (const auto& v : vecs) {
    if (v.size() != dim) {
      rep.nonzero_ok = false;
      rep.detail = "inconsistent dimensions";
      return rep;
    }
    if (rat_vec_is_zero(v)) {
      rep.nonzero_ok = false;
      rep.detail = "zero vector present";
    }
  }
  if (!rep.nonzero_ok) return rep;

  auto iv = int_view(vecs, gram);
  if (iv) {
    std::set<std::vector<long long>> lookup(iv->vecs.begin(), iv->vecs.end());
    for (size_t i = 0; i < iv->vecs.size() && (rep.crystallographic || rep.reflection_closed); ++i) {
      long long aa = idot(*iv, iv->vecs[i], iv->vecs[i]);
      for (size_t j = 0; j < iv->vecs.size(); ++j) {
        long long ba2 = 2 * idot(*iv, iv->vecs[j], iv->vecs[i]);
        if (ba2 % aa != 0) {
          if (rep.crystallographic) {
            rep.crystallographic = false;
            std::ostringstream os;
            os << "pairing <beta,alpha^vee> not an integer (" << ba2 << "/" << aa << ")";
            rep.detail = os.str();
          }
          continue;
        }
        long long c = ba2 / aa;
        std::vector<long long> r = iv->vecs[j];
        for (size_t t = 0; t < r.size(); ++t) r[t] -= c * iv->vecs[i][t];
        if (!lookup.count(r)) {
          rep.reflection_closed = false;
          if (rep.detail.empty()) rep.detail = "not closed under reflections";
        }
      }
    }
  } else {
    RootSystem tmp;
    tmp.ambient_dim = static_cast<int>(dim);
    tmp.gram = gram;
    std::set<RatVec> lookup(vecs.begin(), vecs.end());
    for (const auto& a : vecs) {
      Rat aa = tmp.inner(a, a);
      for (const auto& b : vecs) {
        Rat pair = 2 * tmp.inner(b, a) / aa;
        if (!is_integer(pair)) {
          rep.crystallographic = false;
          if (rep.detail.empty()) rep.detail = "pairing <beta,alpha^vee> = " + rat_to_string(pair);
          continue;
        }
        if (!lookup.count(tmp.reflect(a, b))) {
          rep.reflection_closed = false;
          if (rep.detail.empty()) rep.detail = "not closed under reflections";
        }
      }
    }
  }

  // only +-alpha, +-2alpha may be proportional
  for (size_t i = 0; i < vecs.size() && rep.proportionality_ok; ++i)
    for (size_t j = i + 1; j < vecs.size(); ++j) {
      auto c = proportionality(vecs[i], vecs[j]);
      if (!c) continue;
      Rat a = *c < 0 ? -*c : *c;
      if (a != 1 && a != 2 && a != Rat(1, 2)) {
        rep.proportionality_ok = false;
        rep.detail = "proportional roots with ratio " + rat_to_string(*c);
        break;
      }
    }

  // span check (informational)
  {
    RatMat rows(vecs.begin(), vecs.end());
    size_t rank = 0;
    size_t m = rows.size();
    for (size_t col = 0; col < dim && rank < m; ++col) {
      size_t piv = rank;
      while (piv < m && rows[piv][col] == 0) ++piv;
      if (piv == m) continue;
      std::swap(rows[piv], rows[rank]);
      for (size_t r = 0; r < m; ++r) {
        if (r == rank || rows[r][col] == 0) continue;
        Rat f = rows[r][col] / rows[rank][col];
        for (size_t cc = 0; cc < dim; ++cc) rows[r][cc] -= f * rows[rank][cc];
      }
      ++rank;
    }
    rep.spans = (rank == dim);
  }
  return rep;
}

namespace {

void finish_construction(RootSystem& rs, const RatVec* chamber) {
  // positive system
  rs.positive.clear();
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    bool pos;
    if (chamber) {
      Rat p = rs.inner(rs.roots[i], *chamber);
      if (p == 0) fail(Errc::InvalidArgument, "chamber vector lies on a wall");
      pos = p > 0;
    } else {
      pos = lex_positive(rs.roots[i]);
    }
    if (pos) rs.positive.push_back(static_cast<int>(i));
  }
  if (2 * rs.positive.size() != rs.roots.size())
    fail(Errc::InvalidArgument, "positive system does not split the roots in half");

  // simple roots: positives that are not sums of two positives
  std::set<RatVec> pos_set;
  for (int i : rs.positive) pos_set.insert(rs.roots[i]);
  rs.simple.clear();
  for (int i : rs.positive) {
    bool decomposable = false;
    for (int j : rs.positive) {
      RatVec diff = rat_vec_sub(rs.roots[i], rs.roots[j]);
      if (rat_vec_is_zero(diff)) continue;
      if (pos_set.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) rs.simple.push_back(i);
  }
  std::sort(rs.simple.begin(), rs.simple.end(),
            [&](int a, int b) { return rs.roots[a] < rs.roots[b]; });

  // expand positives over the simple basis: solve in the span
  const int r = static_cast<int>(rs.simple.size());
  RatMat StS(r, RatVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) StS[i][j] = rs.inner(rs.simple_root(i), rs.simple_root(j));
  rs.positive_simple_coords.clear();
  for (int pi = 0; pi < rs.n_positive(); ++pi) {
    RatVec rhs(r);
    for (int i = 0; i < r; ++i) rhs[i] = rs.inner(rs.simple_root(i), rs.positive_root(pi));
    auto sol = solve_exact(StS, rhs);
    if (!sol) fail(Errc::InvalidArgument, "simple roots do not span the root lattice");
    std::vector<int> coords(r);
    RatVec recon(rs.ambient_dim, 0);
    for (int i = 0; i < r; ++i) {
      if (!is_integer((*sol)[i]) || (*sol)[i] < 0)
        fail(Errc::InvalidArgument, "positive root is not an N-combination of simple roots");
      coords[i] = static_cast<int>(numerator((*sol)[i]).convert_to<long>());
      recon = rat_vec_add(recon, rat_vec_scale(rs.simple_root(i), (*sol)[i]));
    }
    if (recon != rs.positive_root(pi)) fail(Errc::InvalidArgument, "inconsistent simple expansion");
    rs.positive_simple_coords.push_back(coords);
  }

  // W-orbits via closure under simple reflections
  rs.orbit_of.assign(rs.roots.size(), -1);
  int next_orbit = 0;
  for (size_t seed = 0; seed < rs.roots.size(); ++seed) {
    if (rs.orbit_of[seed] >= 0) continue;
    std::vector<size_t> stack{seed};
    rs.orbit_of[seed] = next_orbit;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      for (int s : rs.simple) {
        RatVec img = rs.reflect(rs.roots[s], rs.roots[cur]);
        int idx = rs.root_index(img);
        if (idx < 0) fail(Errc::InvalidArgument, "root set not reflection-closed");
        if (rs.orbit_of[idx] < 0) {
          rs.orbit_of[idx] = next_orbit;
          stack.push_back(idx);
        }
      }
    }
    ++next_orbit;
  }
  rs.num_orbits = next_orbit;

  // orbit representatives: positive root of minimal (height, lex)
  rs.orbit_rep.assign(rs.num_orbits, -1);
  for (int pi = 0; pi < rs.n_positive(); ++pi) {
    int root_idx = rs.positive[pi];
    int o = rs.orbit_of[root_idx];
    if (rs.orbit_rep[o] < 0 || rs.roots[root_idx] < rs.roots[rs.orbit_rep[o]]) rs.orbit_rep[o] = root_idx;
  }

  // orbit labels by norm
  std::vector<std::pair<Rat, int>> by_norm;
  for (int o = 0; o < rs.num_orbits; ++o) {
    const RatVec& rep = rs.roots[rs.orbit_rep[o]];
    by_norm.emplace_back(rs.inner(rep, rep), o);
  }
  std::sort(by_norm.begin(), by_norm.end());
  rs.orbit_labels.assign(rs.num_orbits, "");
  if (rs.num_orbits == 1) {
    rs.orbit_labels[by_norm[0].second] = "all";
  } else if (rs.num_orbits == 2 && rs.family_label == "BC") {
    rs.orbit_labels[by_norm[0].second] = "short";
    rs.orbit_labels[by_norm[1].second] = "double";
  } else if (rs.num_orbits == 2) {
    rs.orbit_labels[by_norm[0].second] = "short";
    rs.orbit_labels[by_norm[1].second] = "long";
  } else if (rs.num_orbits == 3 && rs.family_label == "BC") {
    rs.orbit_labels[by_norm[0].second] = "short";
    rs.orbit_labels[by_norm[1].second] = "medium";
    rs.orbit_labels[by_norm[2].second] = "double";
  } else {
    for (size_t i = 0; i < by_norm.size(); ++i) rs.orbit_labels[by_norm[i].second] = "o" + std::to_string(i);
  }
}

std::vector<RatVec> family_roots(const std::string& family, int rank, int& ambient) {
  std::vector<RatVec> out;
  auto e = [&](int i) {
    RatVec v(ambient, 0);
    v[i] = 1;
    return v;
  };
  auto add_pm = [&](RatVec v) {
    out.push_back(v);
    out.push_back(rat_vec_scale(v, -1));
  };

  if (family == "A") {
    if (rank < 1) fail(Errc::RankOutOfRange, "A_n needs n >= 1");
    ambient = rank + 1;
    for (int i = 0; i < ambient; ++i)
      for (int j = 0; j < ambient; ++j)
        if (i != j) out.push_back(rat_vec_sub(e(i), e(j)));
    return out;
  }
  if (family == "B" || family == "C" || family == "BC" || family == "D") {
    int min_rank = family == "D" ? 3 : (family == "BC" ? 1 : 2);
    if (rank < min_rank) fail(Errc::RankOutOfRange, family + " rank too small");
    ambient = rank;
    for (int i = 0; i < rank; ++i) {
      if (family == "B" || family == "BC") add_pm(e(i));
      if (family == "C" || family == "BC") add_pm(rat_vec_scale(e(i), 2));
    }
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        add_pm(rat_vec_add(e(i), e(j)));
        add_pm(rat_vec_sub(e(i), e(j)));
      }
    return out;
  }
  if (family == "G" || family == "G2") {
    if (family == "G" && rank != 2) fail(Errc::RankOutOfRange, "G family has rank 2 only");
    ambient = 3;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) out.push_back(rat_vec_sub(e(i), e(j)));  // short
    for (int i = 0; i < 3; ++i) {
      RatVec v(3, -1);
      v[i] = 2;
      add_pm(v);  // long
    }
    return out;
  }
  if (family == "F" || family == "F4") {
    if (family == "F" && rank != 4) fail(Errc::RankOutOfRange, "F family has rank 4 only");
    ambient = 4;
    for (int i = 0; i < 4; ++i) add_pm(e(i));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        add_pm(rat_vec_add(e(i), e(j)));
        add_pm(rat_vec_sub(e(i), e(j)));
      }
    for (int s = 0; s < 16; ++s) {
      RatVec v(4);
      for (int i = 0; i < 4; ++i) v[i] = (s >> i) & 1 ? Rat(-1, 2) : Rat(1, 2);
      out.push_back(v);
    }
    return out;
  }
  if (family == "E6" || family == "E7" || family == "E8" || family == "E") {
    int n = family == "E" ? rank : (family[1] - '0');
    if (n < 6 || n > 8) fail(Errc::RankOutOfRange, "E family has ranks 6,7,8");
    ambient = 8;
    std::vector<RatVec> e8;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        for (int si = 0; si < 2; ++si)
          for (int sj = 0; sj < 2; ++sj) {
            RatVec v(8, 0);
            v[i] = si ? -1 : 1;
            v[j] = sj ? -1 : 1;
            e8.push_back(v);
          }
    for (int s = 0; s < 256; ++s) {
      int minus = __builtin_popcount(s);
      if (minus % 2) continue;
      RatVec v(8);
      for (int i = 0; i < 8; ++i) v[i] = (s >> i) & 1 ? Rat(-1, 2) : Rat(1, 2);
      e8.push_back(v);
    }
    if (n == 8) return e8;
    // E7: orthogonal to delta1 = e7+e8; E6: also orthogonal to delta2 = e6+e7
    RatVec d1(8, 0), d2(8, 0);
    d1[6] = d1[7] = 1;
    d2[5] = d2[6] = 1;
    RootSystem tmp;
    tmp.ambient_dim = 8;
    tmp.gram = rat_identity(8);
    for (const auto& v : e8) {
      if (tmp.inner(v, d1) != 0) continue;
      if (n == 6 && tmp.inner(v, d2) != 0) continue;
      out.push_back(v);
    }
    return out;
  }
  fail(Errc::UnknownFamily, "unknown family '" + family + "'");
}

}  // namespace

RootSystem build_root_system(const std::string& family, int rank) {
  RootSystem rs;
  std::string fam = family;
  if (fam == "G2") rank = 2;
  if (fam == "F4") rank = 4;
  if (fam == "E6" || fam == "E7" || fam == "E8") rank = fam[1] - '0';
  rs.family_label = fam;
  rs.rank_label = rank;
  rs.roots = family_roots(fam, rank, rs.ambient_dim);
  rs.gram = rat_identity(rs.ambient_dim);
  std::sort(rs.roots.begin(), rs.roots.end());
  finish_construction(rs, nullptr);
  return rs;
}

RootSystem custom_root_system(const std::vector<RatVec>& vectors, const RatMat& gram, const RatVec* chamber) {
  auto rep = validate_root_system(vectors, gram);
  if (!rep.valid()) fail(Errc::InvalidArgument, "invalid custom root system: " + rep.detail);
  RootSystem rs;
  rs.family_label = "custom";
  rs.ambient_dim = static_cast<int>(vectors[0].size());
  rs.gram = gram;
  rs.roots = vectors;
  std::sort(rs.roots.begin(), rs.roots.end());
  rs.roots.erase(std::unique(rs.roots.begin(), rs.roots.end()), rs.roots.end());
  finish_construction(rs, chamber);
  return rs;
}

RatVec coroot(const RootSystem& rs, const RatVec& alpha) {
  if (!rs.is_root(alpha)) fail(Errc::NotARoot, "coroot of a non-root");
  return rat_vec_scale(alpha, Rat(2) / rs.inner(alpha, alpha));
}

RatVec rho_weighted(const RootSystem& rs, const MultiplicityFunction& k) {
  RatVec rho(rs.ambient_dim, 0);
  for (int i = 0; i < rs.n_positive(); ++i) {
    Rat kv = k.on_root(rs, rs.positive[i]);
    if (kv != 0) rho = rat_vec_add(rho, rat_vec_scale(rs.positive_root(i), kv / 2));
  }
  return rho;
}

std::vector<RatMat> weyl_elements(const RootSystem& rs, long cap) {
  std::vector<RatMat> gens;
  for (int s : rs.simple) gens.push_back(rs.reflection_matrix(rs.roots[s]));
  std::vector<RatMat> elems{rat_identity(rs.ambient_dim)};
  std::set<RatMat> seen{elems[0]};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      RatMat next = rat_matmul(g, elems[head]);
      if (seen.insert(next).second) {
        elems.push_back(next);
        if (static_cast<long>(elems.size()) > cap)
          fail(Errc::WeylGroupTooLarge, "Weyl group exceeds cap " + std::to_string(cap));
      }
    }
  }
  return elems;
}

std::vector<ConePoint> enumerate_cone(const RootSystem& rs, int max_height) {
  if (max_height < 0) fail(Errc::InvalidArgument, "max_height must be >= 0");
  const int r = rs.rank();
  std::vector<ConePoint> out;
  std::vector<int> cur(r, 0);
  // enumerate all coordinate vectors with sum <= max_height
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == r) {
      ConePoint p;
      p.coords = cur;
      p.height = max_height - remaining;
      out.push_back(p);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
    cur[pos] = 0;
  };
  rec(0, max_height);
  std::sort(out.begin(), out.end(), [](const ConePoint& a, const ConePoint& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coords < b.coords;
  });
  return out;
}

ChamberImage chamber_map(const RootSystem& rs, const std::vector<double>& H) {
  const int n = rs.ambient_dim;
  ChamberImage out;
  out.w.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) out.w[i][i] = 1.0;
  out.h = H;
  const auto& rd = rs.roots_d();
  // double versions of the simple reflection matrices
  std::vector<std::vector<std::vector<double>>> refl;
  for (int s : rs.simple) {
    RatMat M = rs.reflection_matrix(rs.roots[s]);
    std::vector<std::vector<double>> Md(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Md[i][j] = to_double(M[i][j]);
    refl.push_back(Md);
  }
  long guard = 0;
  const long guard_max = 16L * (rs.n_positive() + 4);
  while (true) {
    int hit = -1;
    for (size_t si = 0; si < rs.simple.size(); ++si) {
      if (rs.inner_d(rd[rs.simple[si]], out.h) > 0) {
        hit = static_cast<int>(si);
        break;
      }
    }
    if (hit < 0) break;
    std::vector<double> nh(n, 0.0);
    std::vector<std::vector<double>> nw(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        nh[i] += refl[hit][i][j] * out.h[j];
        for (int l = 0; l < n; ++l) nw[i][j] += refl[hit][i][l] * out.w[l][j];
      }
    out.h = nh;
    out.w = nw;
    if (++guard > guard_max) fail(Errc::InvalidArgument, "chamber_map failed to terminate");
  }
  return out;
}

std::pair<RatMat, RatVec> chamber_map_exact(const RootSystem& rs, const RatVec& H) {
  RatMat w = rat_identity(rs.ambient_dim);
  RatVec h = H;
  long guard = 0;
  const long guard_max = 16L * (rs.n_positive() + 4);
  while (true) {
    int hit = -1;
    for (size_t si = 0; si < rs.simple.size(); ++si) {
      if (rs.inner(rs.roots[rs.simple[si]], h) > 0) {
        hit = static_cast<int>(si);
        break;
      }
    }
    if (hit < 0) break;
    RatMat M = rs.reflection_matrix(rs.roots[rs.simple[hit]]);
    h = rat_matvec(M, h);
    w = rat_matmul(M, w);
    if (++guard > guard_max) fail(Errc::InvalidArgument, "chamber_map failed to terminate");
  }
  return {w, h};
}

MultiplicityFunction multiplicity_from_labels(const RootSystem& rs, const std::map<std::string, Rat>& values) {
  MultiplicityFunction k;
  k.by_orbit.assign(rs.num_orbits, 0);
  std::vector<bool> set(rs.num_orbits, false);
  for (const auto& [label, val] : values) {
    int found = -1;
    for (int o = 0; o < rs.num_orbits; ++o)
      if (rs.orbit_labels[o] == label) found = o;
    if (found < 0) fail(Errc::InvalidArgument, "unknown orbit label '" + label + "'");
    k.by_orbit[found] = val;
    set[found] = true;
  }
  for (int o = 0; o < rs.num_orbits; ++o)
    if (!set[o]) fail(Errc::InvalidArgument, "missing multiplicity for orbit '" + rs.orbit_labels[o] + "'");
  return k;
}

MultiplicityFunction constant_multiplicity(const RootSystem& rs, const Rat& value) {
  MultiplicityFunction k;
  k.by_orbit.assign(rs.num_orbits, value);
  return k;
}

std::vector<int> orbit_partition(const std::vector<RatVec>& vectors, const RatMat& gram) {
  const size_t n = vectors.size();
  std::vector<int> orbit(n, -1);
  auto iv = int_view(vectors, gram);
  int next = 0;
  if (iv) {
    std::map<std::vector<long long>, int> lookup;
    for (size_t i = 0; i < n; ++i) lookup[iv->vecs[i]] = static_cast<int>(i);
    for (size_t seed = 0; seed < n; ++seed) {
      if (orbit[seed] >= 0) continue;
      std::vector<size_t> stack{seed};
      orbit[seed] = next;
      while (!stack.empty()) {
        size_t cur = stack.back();
        stack.pop_back();
        for (size_t a = 0; a < n; ++a) {
          long long aa = idot(*iv, iv->vecs[a], iv->vecs[a]);
          long long c2 = 2 * idot(*iv, iv->vecs[cur], iv->vecs[a]);
          if (c2 % aa != 0) fail(Errc::InvalidArgument, "orbit_partition needs a crystallographic set");
          long long c = c2 / aa;
          std::vector<long long> img = iv->vecs[cur];
          for (size_t t = 0; t < img.size(); ++t) img[t] -= c * iv->vecs[a][t];
          auto it = lookup.find(img);
          if (it == lookup.end()) fail(Errc::InvalidArgument, "orbit_partition needs a reflection-closed set");
          if (orbit[it->second] < 0) {
            orbit[it->second] = next;
            stack.push_back(it->second);
          }
        }
      }
      ++next;
    }
    return orbit;
  }
  RootSystem tmp;
  tmp.ambient_dim = static_cast<int>(vectors.empty() ? 0 : vectors[0].size());
  tmp.gram = gram;
  std::map<RatVec, int> lookup;
  for (size_t i = 0; i < n; ++i) lookup[vectors[i]] = static_cast<int>(i);
  for (size_t seed = 0; seed < n; ++seed) {
    if (orbit[seed] >= 0) continue;
    std::vector<size_t> stack{seed};
    orbit[seed] = next;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      for (size_t a = 0; a < n; ++a) {
        auto it = lookup.find(tmp.reflect(vectors[a], vectors[cur]));
        if (it == lookup.end()) fail(Errc::InvalidArgument, "orbit_partition needs a reflection-closed set");
        if (orbit[it->second] < 0) {
          orbit[it->second] = next;
          stack.push_back(it->second);
        }
      }
    }
    ++next;
  }
  return orbit;
}

}  // namespace ho
