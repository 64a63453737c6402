#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ho/hypergeom.hpp"
#include "ho/root_system.hpp"

namespace ho {

// Element of a real quadratic extension a + b*sqrt(D), exact. Perfect-square
// discriminants collapse to plain rationals at construction.
struct QuadExt {
  Rat a, b, D;  // invariant: b == 0 => D == 0; b != 0 => D > 0 and not a perfect square

  QuadExt() : a(0), b(0), D(0) {}
  QuadExt(const Rat& r) : a(r), b(0), D(0) {}  // NOLINT: implicit by design
  static QuadExt sqrt_of(const Rat& disc);     // requires disc >= 0

  bool is_rational() const { return b == 0; }
  double to_double() const;
  std::string str() const;

  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator-() const { return QuadExt{} - *this; }
  bool operator==(const QuadExt& o) const;
  bool operator!=(const QuadExt& o) const { return !(*this == o); }
};

struct MatchedPair {
  std::vector<RatVec> sigma_pi;   // explicit root vectors (in Sigma's ambient space)
  std::vector<QuadExt> k_values;  // aligned with sigma_pi
  std::string branch_tags;        // e.g. "e1:+;e1-e2:-" or "...:special"
  bool valid = false;
  std::string failure_reason;

  bool k_all_rational() const;
  RatVec k_rational() const;  // fails if irrational
};

struct MatchReport {
  bool mc1_ok = true;
  bool root_system_ok = true;
  bool weyl_ok = true;
  bool k_invariant_ok = true;
  bool matching_ok = true;
  bool regularity_ok = true;
  std::vector<std::string> violations;
  bool ok() const {
    return mc1_ok && root_system_ok && weyl_ok && k_invariant_ok && matching_ok && regularity_ok;
  }
};

// Exact check of the matching and regularity equation families over
// Sigma u 2Sigma, plus containment / root-system / Weyl-group criteria.
MatchReport verify_matching(const RootSystem& sigma, const MultiplicityFunction& m,
                            const MultiplicityFunction& kappa, const std::vector<RatVec>& sigma_pi,
                            const std::vector<QuadExt>& k_values);

// Enumerates every branch-sign combination of the closed-form solver over the
// W-orbit representatives of Sigma \ 2Sigma (plus zero-k layer extensions) and
// validates each candidate. Both valid and invalid candidates are returned.
std::vector<MatchedPair> solve_matching(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                                        const MultiplicityFunction& kappa);

struct SmallKTypeRecord {
  std::string group_label;  // e.g. "sp(3,1)"
  std::string ktype_name;   // e.g. "pi_2"
  std::string source;       // family key, e.g. "sp(p,1):pi_n"
  std::map<std::string, Rat> params;
  RootSystemPtr sigma;
  MultiplicityFunction m;
  MultiplicityFunction kappa;
  std::vector<MatchedPair> matched;  // validated catalog pairs; empty iff no expression exists
  bool has_hypergeometric = true;
  std::string note;

  Rat e_exponent_of(size_t pair_index) const;
  MatchedEvaluator evaluator(size_t pair_index) const;  // needs rational k
};

// catalog generators (parameters follow the group-family conventions)
SmallKTypeRecord catalog_trivial(const RootSystemPtr& sigma, const MultiplicityFunction& m,
                                 const std::string& group_label);
SmallKTypeRecord catalog_sp_p1(int p, int n);
SmallKTypeRecord catalog_so_even1(int r, int s);  // so(2r,1), K-type pi_s^{+-}
SmallKTypeRecord catalog_so_pq(int p, int q, bool case_ii);
SmallKTypeRecord catalog_hermitian_su(int p, int q, const Rat& nu);
SmallKTypeRecord catalog_hermitian_sp(int p, const Rat& nu);       // sp(p,R)
SmallKTypeRecord catalog_hermitian_so_star(int n, const Rat& nu);  // so*(2n), n >= 3
SmallKTypeRecord catalog_hermitian_so_p2(int p, const Rat& nu);    // so(p,2), p >= 3
SmallKTypeRecord catalog_hermitian_e6(const Rat& nu);              // e6(-14)
SmallKTypeRecord catalog_hermitian_e7(const Rat& nu);              // e7(-25)
SmallKTypeRecord catalog_f4_family(int m_short);                   // m_short in {1,2,4,8}
SmallKTypeRecord catalog_split(const std::string& family, int rank);
SmallKTypeRecord catalog_g2(int which_pi);  // 1 or 2

struct CatalogFilter {
  std::string family;  // "sp(p,1)" | "so(2r,1)" | "so(p,q)" | "su" | "sp(p,R)" | "so*" | "so(p,2)"
                       // | "e6(-14)" | "e7(-25)" | "F4" | "split" | "G2" | "trivial"
  std::map<std::string, Rat> params;
};

std::vector<SmallKTypeRecord> catalog(const CatalogFilter& filter);

}  // namespace ho
