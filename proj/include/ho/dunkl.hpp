#pragma once

#include <map>
#include <vector>

#include "ho/root_system.hpp"

namespace ho {

// Polynomial function on the span of the roots, written in the coordinates
// y_i = alpha_i(H) dual to the simple-root basis. Exact rational coefficients,
// canonical form (no zero terms stored).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(int nvars) : nvars_(nvars) {}
  static RatPoly constant(int nvars, const Rat& c);
  static RatPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  Rat value_at_zero() const;
  Rat coeff(const std::vector<int>& mono) const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly operator*(const RatPoly& o) const;
  RatPoly scaled(const Rat& c) const;
  RatPoly truncated(int max_degree) const;
  RatPoly homogeneous_part(int degree) const;

  // p(My): substitute y_i -> sum_j M[i][j] y_j
  RatPoly substituted(const RatMat& M) const;

  // exact division by a linear form sum_i c_i y_i; fails if not divisible
  RatPoly divided_by_linear(const RatVec& c) const;

  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  void set_term(const std::vector<int>& mono, const Rat& c);

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, Rat> terms_;
};

// Precomputed root-system data for the operators: everything expressed over
// the simple-root coordinates, all entries exact.
struct DunklContext {
  RootSystemPtr rs;
  MultiplicityFunction k;
  int nvars = 0;
  RatMat simple_gram;                    // (alpha_i, alpha_j)
  std::vector<RatVec> pos_in_simple;     // positive roots over the simple basis
  std::vector<RatMat> subs_matrix;       // substitution matrix of r_alpha per positive root
  std::vector<Rat> k_pos;                // k on each positive root
  RatVec rho_in_dual;                    // rho(k) paired against H_{alpha_i}} (see below)
};

DunklContext make_dunkl_context(const RootSystemPtr& rs, const MultiplicityFunction& k);

// Dunkl operator T-bar_k(H) = d(H) + sum_{a>0} k_a a(H) (1 - r_a)/a applied to p.
// H is given in ambient coordinates.
RatPoly dunkl_apply(const DunklContext& ctx, const RatVec& H, const RatPoly& p);

// Cherednik operator T_k(H) = d(H) + sum_{a>0} k_a a(H) (1-e^{-a})^{-1}(1-r_a) - rho(k)(H),
// acting on the degree-<=cap truncation (Bernoulli expansion of (1-e^{-a})^{-1},
// with the u/(1-e^{-u}) convention fixing the degree-0 coefficient at 1/2).
RatPoly cherednik_apply(const DunklContext& ctx, const RatVec& H, const RatPoly& p, int degree_cap);

// Gram matrix of (p,q)_k = (T-bar(p) q)(0) on the monomial basis of S_{<= d};
// basis order: graded, then lex on exponents.
struct PairingGram {
  std::vector<std::vector<int>> basis;  // monomials
  RatMat gram;
};
PairingGram pairing_gram(const RootSystemPtr& rs, const MultiplicityFunction& k, int d);

// true iff every homogeneous block of the pairing up to degree d has nonzero
// determinant. A `true` is a degree-bounded certificate; `false` is conclusive.
struct GramRegularity {
  bool regular;
  std::vector<Rat> block_dets;  // per degree 0..d
};
GramRegularity regular_by_gram(const RootSystemPtr& rs, const MultiplicityFunction& k, int d);

// exact Bernoulli numbers, B1 = +1/2 convention (EGF u/(1-e^{-u}))
std::vector<Rat> bernoulli_plus(int n_max);

}  // namespace ho
