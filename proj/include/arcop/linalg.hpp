#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "arcop/scalar.hpp"

namespace arcop {

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;  // row-major

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

inline bool is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec scale(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (auto& s : r) s = c * s;
  return r;
}

inline Matrix zero_matrix(Field f, std::size_t rows, std::size_t cols) {
  return Matrix(rows, zero_vec(f, cols));
}

inline Matrix identity_matrix(Field f, std::size_t n) {
  Matrix m = zero_matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar::one(f);
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b, Field f) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Matrix r = zero_matrix(f, n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline Matrix transpose(const Matrix& a, Field f) {
  std::size_t n = a.size(), m = n ? a[0].size() : 0;
  Matrix r = zero_matrix(f, m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

inline Vec matvec(const Matrix& a, const Vec& v, Field f) {
  Vec r = zero_vec(f, a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) r[i] += a[i][j] * v[j];
  return r;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a, Field f) {
  std::size_t n = a.size();
  Matrix m = a, inv = identity_matrix(f, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Scalar piv = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] = m[c][j] / piv;
      inv[c][j] = inv[c][j] / piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Scalar k = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= k * m[c][j];
        inv[r][j] -= k * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace arcop
