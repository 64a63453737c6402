#include "ho/rational.hpp"

#include <cctype>

namespace ho {

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail(Errc::InvalidArgument, "empty rational literal");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Int num(t.substr(0, slash));
    Int den(t.substr(slash + 1));
    if (den == 0) fail(Errc::InvalidArgument, "zero denominator in '" + s + "'");
    return Rat(num, den);
  }
  auto dot = t.find('.');
  if (dot == std::string::npos) return Rat(Int(t));

  std::string head = t.substr(0, dot), tail = t.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
  if (head.empty()) head = "0";
  for (char c : tail)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail(Errc::InvalidArgument, "bad rational literal '" + s + "'");
  Int den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  Int num = Int(head) * den + (tail.empty() ? Int(0) : Int(tail));
  Rat r(num, den);
  return neg ? -r : r;
}

std::string rat_to_string(const Rat& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<RatVec> solve_exact(RatMat M, RatVec b) {
  const size_t n = M.size();
  if (n == 0 || M[0].size() != n || b.size() != n) return std::nullopt;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Rat f = M[r][col] / M[col][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      b[r] -= f * b[col];
    }
  }
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
  return x;
}

std::optional<RatMat> invert_exact(const RatMat& M) {
  const size_t n = M.size();
  RatMat A = M, I(n, RatVec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(I[piv], I[col]);
    Rat d = A[col][col];
    for (size_t c = 0; c < n; ++c) {
      A[col][c] /= d;
      I[col][c] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col];
      for (size_t c = 0; c < n; ++c) {
        A[r][c] -= f * A[col][c];
        I[r][c] -= f * I[col][c];
      }
    }
  }
  return I;
}

Rat det_exact(RatMat M) {
  const size_t n = M.size();
  Rat det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(M[piv], M[col]);
      det = -det;
    }
    det *= M[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      Rat f = M[r][col] / M[col][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
    }
  }
  return det;
}

}  // namespace ho
