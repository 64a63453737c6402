#include "ho/dunkl.hpp"

#include <algorithm>

#include "ho/errors.hpp"

namespace ho {

RatPoly RatPoly::constant(int nvars, const Rat& c) {
  RatPoly p(nvars);
  if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
  return p;
}

RatPoly RatPoly::variable(int nvars, int i) {
  RatPoly p(nvars);
  std::vector<int> m(nvars, 0);
  m[i] = 1;
  p.terms_[m] = 1;
  return p;
}

int RatPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

Rat RatPoly::value_at_zero() const {
  auto it = terms_.find(std::vector<int>(nvars_, 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat RatPoly::coeff(const std::vector<int>& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rat(0) : it->second;
}

void RatPoly::set_term(const std::vector<int>& mono, const Rat& c) {
  if (c == 0)
    terms_.erase(mono);
  else
    terms_[mono] = c;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    Rat nc = coeff(m) + c;
    set_term(m, nc);
  }
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    Rat nc = coeff(m) - c;
    set_term(m, nc);
  }
  return *this;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  RatPoly out(nvars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      std::vector<int> m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = m1[i] + m2[i];
      Rat nc = out.coeff(m) + c1 * c2;
      out.set_term(m, nc);
    }
  return out;
}

RatPoly RatPoly::scaled(const Rat& c) const {
  RatPoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_[m] = v * c;
  return out;
}

RatPoly RatPoly::truncated(int max_degree) const {
  RatPoly out(nvars_);
  for (const auto& [m, v] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    if (s <= max_degree) out.terms_[m] = v;
  }
  return out;
}

RatPoly RatPoly::homogeneous_part(int degree) const {
  RatPoly out(nvars_);
  for (const auto& [m, v] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    if (s == degree) out.terms_[m] = v;
  }
  return out;
}

RatPoly RatPoly::substituted(const RatMat& M) const {
  // images of the variables
  std::vector<RatPoly> img(nvars_, RatPoly(nvars_));
  for (int i = 0; i < nvars_; ++i) {
    RatPoly li(nvars_);
    for (int j = 0; j < nvars_; ++j)
      if (M[i][j] != 0) li += RatPoly::variable(nvars_, j).scaled(M[i][j]);
    img[i] = li;
  }
  // memoized powers
  int dmax = degree();
  std::vector<std::vector<RatPoly>> pow(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pow[i].push_back(RatPoly::constant(nvars_, 1));
    for (int e = 1; e <= dmax; ++e) pow[i].push_back(pow[i][e - 1] * img[i]);
  }
  RatPoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    RatPoly t = RatPoly::constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i)
      if (m[i]) t = t * pow[i][m[i]];
    out += t;
  }
  return out;
}

RatPoly RatPoly::divided_by_linear(const RatVec& c) const {
  int v = -1;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) {
      v = static_cast<int>(i);
      break;
    }
  if (v < 0) fail(Errc::InvalidArgument, "division by the zero linear form");
  RatPoly rem = *this, q(nvars_);
  while (!rem.is_zero()) {
    // term with maximal pivot-degree (ties: map order, deterministic)
    std::vector<int> best;
    int best_deg = -1;
    for (const auto& [m, cc] : rem.terms_)
      if (m[v] > best_deg) {
        best_deg = m[v];
        best = m;
      }
    if (best_deg == 0) fail(Errc::InvalidArgument, "polynomial is not divisible by the linear form");
    Rat coef = rem.coeff(best) / c[v];
    std::vector<int> qm = best;
    qm[v] -= 1;
    q.set_term(qm, q.coeff(qm) + coef);
    // rem -= coef * y^qm * l
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      std::vector<int> m = qm;
      m[static_cast<int>(i)] += 1;
      rem.set_term(m, rem.coeff(m) - coef * c[i]);
    }
  }
  return q;
}

DunklContext make_dunkl_context(const RootSystemPtr& rs, const MultiplicityFunction& k) {
  DunklContext ctx;
  ctx.rs = rs;
  ctx.k = k;
  const int r = rs->rank();
  ctx.nvars = r;
  ctx.simple_gram.assign(r, RatVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) ctx.simple_gram[i][j] = rs->inner(rs->simple_root(i), rs->simple_root(j));

  // expansion of an arbitrary root over the simple basis (integer entries)
  auto expand = [&](const RatVec& root) {
    RatVec rhs(r);
    for (int i = 0; i < r; ++i) rhs[i] = rs->inner(rs->simple_root(i), root);
    auto sol = solve_exact(ctx.simple_gram, rhs);
    if (!sol) fail(Errc::InvalidArgument, "degenerate simple-root Gram matrix");
    return *sol;
  };

  for (int a = 0; a < rs->n_positive(); ++a) {
    const RatVec& alpha = rs->positive_root(a);
    ctx.pos_in_simple.push_back(expand(alpha));
    ctx.k_pos.push_back(k.on_root(*rs, rs->positive[a]));
    RatMat sub(r, RatVec(r, 0));
    for (int i = 0; i < r; ++i) {
      RatVec img = rs->reflect(alpha, rs->simple_root(i));
      sub[i] = expand(img);
    }
    ctx.subs_matrix.push_back(sub);
  }
  return ctx;
}

namespace {

// directional derivative: d(H) p = sum_i (dp/dy_i) * alpha_i(H)
RatPoly directional(const DunklContext& ctx, const RatVec& alphaH_simple, const RatPoly& p) {
  RatPoly out(ctx.nvars);
  for (const auto& [m, c] : p.terms()) {
    for (int i = 0; i < ctx.nvars; ++i) {
      if (m[i] == 0 || alphaH_simple[i] == 0) continue;
      std::vector<int> d = m;
      d[i] -= 1;
      out.set_term(d, out.coeff(d) + c * m[i] * alphaH_simple[i]);
    }
  }
  return out;
}

RatVec simple_values(const DunklContext& ctx, const RatVec& H) {
  RatVec v(ctx.nvars);
  for (int i = 0; i < ctx.nvars; ++i) v[i] = ctx.rs->inner(ctx.rs->simple_root(i), H);
  return v;
}

Rat root_value(const DunklContext& ctx, int a, const RatVec& simple_vals) {
  Rat s = 0;
  for (int i = 0; i < ctx.nvars; ++i)
    if (ctx.pos_in_simple[a][i] != 0) s += ctx.pos_in_simple[a][i] * simple_vals[i];
  return s;
}

}  // namespace

RatPoly dunkl_apply(const DunklContext& ctx, const RatVec& H, const RatPoly& p) {
  RatVec sv = simple_values(ctx, H);
  RatPoly out = directional(ctx, sv, p);
  for (size_t a = 0; a < ctx.pos_in_simple.size(); ++a) {
    if (ctx.k_pos[a] == 0) continue;
    Rat aH = root_value(ctx, static_cast<int>(a), sv);
    if (aH == 0) continue;
    RatPoly diff = p;
    diff -= p.substituted(ctx.subs_matrix[a]);
    if (diff.is_zero()) continue;
    out += diff.divided_by_linear(ctx.pos_in_simple[a]).scaled(ctx.k_pos[a] * aH);
  }
  return out;
}

RatPoly cherednik_apply(const DunklContext& ctx, const RatVec& H, const RatPoly& p, int degree_cap) {
  if (p.degree() > degree_cap) fail(Errc::DegreeCapExceeded, "polynomial degree exceeds the cap");
  RatVec sv = simple_values(ctx, H);
  RatPoly out = directional(ctx, sv, p);

  // -rho(k)(H) p
  RatVec rho = rho_weighted(*ctx.rs, ctx.k);
  out -= p.scaled(ctx.rs->inner(rho, H));

  auto bern = bernoulli_plus(degree_cap);
  for (size_t a = 0; a < ctx.pos_in_simple.size(); ++a) {
    if (ctx.k_pos[a] == 0) continue;
    Rat aH = root_value(ctx, static_cast<int>(a), sv);
    if (aH == 0) continue;
    RatPoly diff = p;
    diff -= p.substituted(ctx.subs_matrix[a]);
    if (diff.is_zero()) continue;
    RatPoly g = diff.divided_by_linear(ctx.pos_in_simple[a]);
    // B(alpha) = sum_n B+_n alpha^n / n!, truncated
    RatPoly alpha_poly(ctx.nvars);
    for (int i = 0; i < ctx.nvars; ++i)
      if (ctx.pos_in_simple[a][i] != 0)
        alpha_poly += RatPoly::variable(ctx.nvars, i).scaled(ctx.pos_in_simple[a][i]);
    RatPoly bexp = RatPoly::constant(ctx.nvars, 1);
    RatPoly apow = RatPoly::constant(ctx.nvars, 1);
    Rat fact = 1;
    for (int n = 1; n <= degree_cap; ++n) {
      apow = (apow * alpha_poly).truncated(degree_cap);
      fact *= n;
      if (bern[n] != 0) bexp += apow.scaled(bern[n] / fact);
    }
    out += (bexp * g).truncated(degree_cap).scaled(ctx.k_pos[a] * aH);
  }
  return out.truncated(degree_cap);
}

std::vector<Rat> bernoulli_plus(int n_max) {
  std::vector<Rat> b(n_max + 1, 0);
  // B-minus recurrence, then flip B1
  std::vector<std::vector<Rat>> C(n_max + 2);
  for (int n = 0; n <= n_max + 1; ++n) {
    C[n].assign(n + 1, 1);
    for (int j = 1; j < n; ++j) C[n][j] = C[n - 1][j - 1] + C[n - 1][j];
  }
  b[0] = 1;
  for (int m = 1; m <= n_max; ++m) {
    Rat s = 0;
    for (int j = 0; j < m; ++j) s += C[m + 1][j] * b[j];
    b[m] = -s / (m + 1);
  }
  if (n_max >= 1) b[1] = Rat(1, 2);
  return b;
}

namespace {

std::vector<std::vector<int>> monomials_up_to(int nvars, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
    cur[pos] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

}  // namespace

PairingGram pairing_gram(const RootSystemPtr& rs, const MultiplicityFunction& k, int d) {
  if (d < 0) fail(Errc::InvalidArgument, "degree must be >= 0");
  auto ctx = make_dunkl_context(rs, k);
  PairingGram out;
  out.basis = monomials_up_to(ctx.nvars, d);
  const size_t B = out.basis.size();
  out.gram.assign(B, RatVec(B, 0));
  for (size_t j = 0; j < B; ++j) {
    RatPoly q(ctx.nvars);
    q.set_term(out.basis[j], 1);
    for (size_t i = 0; i < B; ++i) {
      // T-bar of the monomial basis[i] applied to q, evaluated at 0
      RatPoly cur = q;
      for (int var = 0; var < ctx.nvars && !cur.is_zero(); ++var)
        for (int e = 0; e < out.basis[i][var] && !cur.is_zero(); ++e)
          cur = dunkl_apply(ctx, rs->simple_root(var), cur);
      out.gram[i][j] = cur.value_at_zero();
    }
  }
  return out;
}

GramRegularity regular_by_gram(const RootSystemPtr& rs, const MultiplicityFunction& k, int d) {
  auto pg = pairing_gram(rs, k, d);
  GramRegularity out;
  out.regular = true;
  auto deg_of = [](const std::vector<int>& m) {
    int s = 0;
    for (int x : m) s += x;
    return s;
  };
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < pg.basis.size(); ++i)
      if (deg_of(pg.basis[i]) == deg) idx.push_back(i);
    RatMat block(idx.size(), RatVec(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) block[i][j] = pg.gram[idx[i]][idx[j]];
    Rat det = det_exact(block);
    out.block_dets.push_back(det);
    if (det == 0) out.regular = false;
  }
  return out;
}

}  // namespace ho
