#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ho/rational.hpp"

namespace ho {

// Crystallographic (possibly non-reduced) root system with exact rational
// coordinates. The ambient inner product is given by a rational Gram matrix;
// points of the underlying space use the same coordinates, so a functional
// alpha pairs with a point h as alpha^T G h.
struct RootSystem {
  int ambient_dim = 0;
  std::string family_label;  // A/B/C/D/BC/E6/E7/E8/F4/G2/custom
  int rank_label = 0;        // family rank (0 for custom)
  RatMat gram;

  std::vector<RatVec> roots;
  std::vector<int> positive;  // indices into roots
  std::vector<int> simple;    // indices into roots, subset of positive

  std::vector<int> orbit_of;             // per root: orbit id (W-orbit)
  int num_orbits = 0;
  std::vector<std::string> orbit_labels;  // per orbit id
  std::vector<int> orbit_rep;             // per orbit id: a representative root index

  // positive roots expanded over the simple basis (nonnegative integers)
  std::vector<std::vector<int>> positive_simple_coords;

  Rat inner(const RatVec& a, const RatVec& b) const;
  double inner_d(const std::vector<double>& a, const std::vector<double>& b) const;

  // index of a vector in roots, or -1
  int root_index(const RatVec& v) const;
  bool is_root(const RatVec& v) const { return root_index(v) >= 0; }

  // r_alpha(x) = x - 2(x,alpha)/(alpha,alpha) * alpha
  RatVec reflect(const RatVec& alpha, const RatVec& x) const;

  // reflection matrix of alpha (acts on coordinate vectors)
  RatMat reflection_matrix(const RatVec& alpha) const;

  int n_positive() const { return static_cast<int>(positive.size()); }
  int rank() const { return static_cast<int>(simple.size()); }
  const RatVec& root(int i) const { return roots[i]; }
  const RatVec& positive_root(int i) const { return roots[positive[i]]; }
  const RatVec& simple_root(int i) const { return roots[simple[i]]; }

  // canonical serialization; used as cache key component
  const std::string& cache_key() const;

  // double-precision caches for the numeric modules
  const std::vector<std::vector<double>>& roots_d() const;
  const std::vector<std::vector<double>>& gram_d() const;
  const std::vector<std::vector<double>>& gram_inv_d() const;

 private:
  mutable std::string cache_key_;
  mutable std::vector<std::vector<double>> roots_d_;
  mutable std::vector<std::vector<double>> gram_d_, gram_inv_d_;
  mutable std::map<RatVec, int> root_lookup_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// W-invariant multiplicity function: one rational value per W-orbit.
struct MultiplicityFunction {
  std::vector<Rat> by_orbit;

  Rat on_root(const RootSystem& rs, int root_index) const { return by_orbit.at(rs.orbit_of[root_index]); }
  // value on an arbitrary vector: 0 if not a root
  Rat on_vector(const RootSystem& rs, const RatVec& v) const {
    int i = rs.root_index(v);
    return i < 0 ? Rat(0) : on_root(rs, i);
  }
  bool all_zero() const {
    for (const auto& v : by_orbit)
      if (v != 0) return false;
    return true;
  }
  bool all_nonnegative() const {
    for (const auto& v : by_orbit)
      if (v < 0) return false;
    return true;
  }
};

// Builds the standard multiplicity function from orbit labels
// (e.g. {"short":1/2,"long":1}); unknown labels are an error.
MultiplicityFunction multiplicity_from_labels(const RootSystem& rs, const std::map<std::string, Rat>& values);

MultiplicityFunction constant_multiplicity(const RootSystem& rs, const Rat& value);

// mu in the monoid N*Sigma'^+, stored over the simple basis.
struct ConePoint {
  std::vector<int> coords;
  int height = 0;
};

struct ValidationReport {
  bool crystallographic = true;
  bool reflection_closed = true;
  bool proportionality_ok = true;  // only +-alpha, +-2alpha may be proportional
  bool nonzero_ok = true;
  bool spans = true;  // roots span the ambient space (informational)
  std::string detail;
  bool valid() const { return crystallographic && reflection_closed && proportionality_ok && nonzero_ok; }
};

RootSystem build_root_system(const std::string& family, int rank);

// Custom system from explicit vectors; positive system by the lexicographic
// rule unless a chamber vector is supplied (then alpha>0 iff (alpha,chamber)>0).
RootSystem custom_root_system(const std::vector<RatVec>& vectors, const RatMat& gram,
                              const RatVec* chamber = nullptr);

ValidationReport validate_root_system(const std::vector<RatVec>& vectors, const RatMat& gram);

// alpha^vee = 2 alpha / (alpha,alpha)
RatVec coroot(const RootSystem& rs, const RatVec& alpha);

// rho(k) = 1/2 sum_{alpha>0} k_alpha alpha
RatVec rho_weighted(const RootSystem& rs, const MultiplicityFunction& k);

// full Weyl group as exact matrices; refuses when |W| would exceed cap
std::vector<RatMat> weyl_elements(const RootSystem& rs, long cap = 200000);

// all mu in N*Sigma'^+ with height <= max_height, graded by height then lex;
// begins with 0
std::vector<ConePoint> enumerate_cone(const RootSystem& rs, int max_height);

// Maps H to (w, H') with H' = w H in the closure of the negative chamber.
struct ChamberImage {
  std::vector<std::vector<double>> w;  // matrix
  std::vector<double> h;               // w * H
};
ChamberImage chamber_map(const RootSystem& rs, const std::vector<double>& H);

// exact variant used by tests
std::pair<RatMat, RatVec> chamber_map_exact(const RootSystem& rs, const RatVec& H);

RatMat rat_identity(int n);
RatMat rat_matmul(const RatMat& A, const RatMat& B);
RatVec rat_matvec(const RatMat& A, const RatVec& x);

// Orbit ids of a reflection-closed vector set under the group generated by its
// own reflections (closure under all reflections of the set).
std::vector<int> orbit_partition(const std::vector<RatVec>& vectors, const RatMat& gram);

}  // namespace ho
