#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ho/errors.hpp"

namespace ho {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline bool is_nonpositive_integer(const Rat& r) { return is_integer(r) && r <= 0; }

// Exact integer square root test.
inline std::optional<Int> exact_isqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

// sqrt of a nonnegative rational if it is a perfect square in Q.
inline std::optional<Rat> exact_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  auto n = exact_isqrt(numerator(q));
  auto d = exact_isqrt(denominator(q));
  if (n && d) return Rat(*n, *d);
  return std::nullopt;
}

// Parses "3", "-5/7", "0.25", "1e-3"-free decimal forms into an exact rational.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& r);

inline RatVec rat_vec_scale(const RatVec& v, const Rat& c) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

inline RatVec rat_vec_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVec rat_vec_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline bool rat_vec_is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Solves M x = b exactly (M square, full rank); returns nullopt if singular.
std::optional<RatVec> solve_exact(RatMat M, RatVec b);

// Inverse of a square rational matrix; nullopt if singular.
std::optional<RatMat> invert_exact(const RatMat& M);

Rat det_exact(RatMat M);

}  // namespace ho
