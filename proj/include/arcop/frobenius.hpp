#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "arcop/linalg.hpp"

namespace arcop {

struct BasisElement {
  std::string label;
  int degree = 0;
};

struct MulEntry {
  int i, j, k;
  Scalar c;
};

/// Raw description of an algebra as read from a file.
struct AlgebraSpec {
  std::string name;
  Field field = Field::Q;
  std::vector<BasisElement> basis;
  Vec unit;
  Vec trace;
  std::vector<MulEntry> mul;
};

using SparseRow = std::vector<std::pair<int, Scalar>>;

/**
 * Finite-dimensional evenly graded unital algebra with a nondegenerate
 * invariant trace pairing. Immutable after build().
 */
class FrobeniusAlgebra {
 public:
  FrobeniusAlgebra() = default;

  static FrobeniusAlgebra build(const AlgebraSpec& spec) {
    FrobeniusAlgebra a;
    a.spec_ = spec;
    a.init();
    return a;
  }

  const AlgebraSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  Field field() const { return spec_.field; }
  std::size_t dim() const { return spec_.basis.size(); }
  const BasisElement& basis(std::size_t i) const { return spec_.basis[i]; }
  const std::string& label(std::size_t i) const { return spec_.basis[i].label; }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (spec_.basis[i].label == label) return static_cast<int>(i);
    fail(ErrorKind::ParseError, "algebra " + name() + " has no basis element '" + label + "'");
  }

  Vec basis_vec(std::size_t i) const { return unit_vec(field(), dim(), i); }
  Vec zero() const { return zero_vec(field(), dim()); }
  const Vec& unit() const { return spec_.unit; }
  /// Index of the basis vector equal to the unit, or -1.
  int unit_index() const { return unit_index_; }

  /// Product of basis elements i and j as a coefficient vector.
  const Vec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

  Vec multiply(const Vec& a, const Vec& b) const {
    Vec r = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar c = a[i] * b[j];
        const Vec& p = table_[i][j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!p[k].is_zero()) r[k] += c * p[k];
      }
    }
    return r;
  }

  Scalar integrate(const Vec& a) const {
    Scalar s = Scalar::zero(field());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!a[i].is_zero()) s += a[i] * spec_.trace[i];
    return s;
  }

  Scalar pairing(const Vec& a, const Vec& b) const { return integrate(multiply(a, b)); }

  const Matrix& metric() const { return metric_; }
  const Matrix& inverse_metric() const { return inv_metric_; }
  /// Nonzero entries of each row of the inverse metric.
  const std::vector<SparseRow>& inverse_metric_rows() const { return inv_rows_; }
  const Vec& euler() const { return euler_; }

  /// Casimir Σ Δ_i g^ij ⊗ Δ_j as (i, j, g^ij) with g^ij ≠ 0.
  std::vector<std::tuple<int, int, Scalar>> casimir() const {
    std::vector<std::tuple<int, int, Scalar>> c;
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& [j, s] : inv_rows_[i]) c.emplace_back(static_cast<int>(i), j, s);
    return c;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (table_[i][j] != table_[j][i]) return false;
    return true;
  }

  std::string format(const Vec& v) const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      if (!v[i].is_one()) out += v[i].str() + "*";
      out += label(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void init() {
    const Field f = field();
    const std::size_t n = dim();
    if (n == 0) fail(ErrorKind::PairingDegenerate, "algebra " + name() + " has empty basis");
    for (const auto& b : spec_.basis)
      if (b.degree < 0 || b.degree % 2 != 0)
        fail(ErrorKind::OddDegreeBasis, "basis element '" + b.label + "' has degree " + std::to_string(b.degree));
    if (spec_.unit.size() != n || spec_.trace.size() != n)
      fail(ErrorKind::ParseError, "unit/trace length differs from basis size in " + name());
    for (const auto& s : spec_.unit) if (s.field() != f) fail(ErrorKind::FieldMismatch, "unit of " + name());
    for (const auto& s : spec_.trace) if (s.field() != f) fail(ErrorKind::FieldMismatch, "trace of " + name());

    table_.assign(n, std::vector<Vec>(n, zero_vec(f, n)));
    for (const auto& e : spec_.mul) {
      if (e.i < 0 || e.j < 0 || e.k < 0 || std::size_t(e.i) >= n || std::size_t(e.j) >= n || std::size_t(e.k) >= n)
        fail(ErrorKind::ParseError, "structure constant index out of range in " + name());
      if (e.c.field() != f) fail(ErrorKind::FieldMismatch, "structure constant of " + name());
      table_[e.i][e.j][e.k] += e.c;
    }

    for (std::size_t i = 0; i < n; ++i) {
      Vec bi = basis_vec(i);
      if (multiply(spec_.unit, bi) != bi || multiply(bi, spec_.unit) != bi)
        fail(ErrorKind::NotUnital, "unit fails on '" + label(i) + "' in " + name());
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vec l = multiply(table_[i][j], basis_vec(k));
          Vec r = multiply(basis_vec(i), table_[j][k]);
          if (l != r)
            fail(ErrorKind::NotAssociative,
                 "(" + label(i) + "," + label(j) + "," + label(k) + ") in " + name());
        }

    metric_ = zero_matrix(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) metric_[i][j] = integrate(table_[i][j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (metric_[i][j] != metric_[j][i])
          fail(ErrorKind::PairingNotInvariant,
               "pairing not symmetric on (" + label(i) + "," + label(j) + ") in " + name());
    // invariance <ab,c> = <a,bc>; implied by associativity for a trace pairing but checked anyway
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (pairing(table_[i][j], basis_vec(k)) != pairing(basis_vec(i), table_[j][k]))
            fail(ErrorKind::PairingNotInvariant,
                 "(" + label(i) + "," + label(j) + "," + label(k) + ") in " + name());
    auto inv = inverse(metric_, f);
    if (!inv) fail(ErrorKind::PairingDegenerate, "metric of " + name() + " is singular");
    inv_metric_ = *inv;
    inv_rows_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!inv_metric_[i][j].is_zero()) inv_rows_[i].emplace_back(static_cast<int>(j), inv_metric_[i][j]);

    euler_ = zero();
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, g] : inv_rows_[i]) euler_ = add(euler_, scale(g, table_[i][j]));
    for (std::size_t i = 0; i < n; ++i)
      if (multiply(euler_, basis_vec(i)) != multiply(basis_vec(i), euler_))
        fail(ErrorKind::PairingNotInvariant, "Euler element is not central in " + name());

    unit_index_ = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (spec_.unit == basis_vec(i)) unit_index_ = static_cast<int>(i);
  }

  AlgebraSpec spec_;
  std::vector<std::vector<Vec>> table_;
  Matrix metric_, inv_metric_;
  std::vector<SparseRow> inv_rows_;
  Vec euler_;
  int unit_index_ = -1;
};

/// Checks that `m` (target_dim x source_dim) is a unital, multiplicative, degree-preserving map.
inline void validate_algebra_map(const FrobeniusAlgebra& src, const FrobeniusAlgebra& tgt, const Matrix& m) {
  if (src.field() != tgt.field()) fail(ErrorKind::FieldMismatch, src.name() + " -> " + tgt.name());
  if (m.size() != tgt.dim()) fail(ErrorKind::NotAlgebraMap, "matrix has wrong number of rows");
  for (const auto& row : m)
    if (row.size() != src.dim()) fail(ErrorKind::NotAlgebraMap, "matrix has wrong number of columns");
  for (std::size_t i = 0; i < tgt.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (!m[i][j].is_zero() && tgt.basis(i).degree != src.basis(j).degree)
        fail(ErrorKind::NotAlgebraMap, "map does not preserve degree of '" + src.label(j) + "'");
  Field f = src.field();
  if (matvec(m, src.unit(), f) != tgt.unit()) fail(ErrorKind::NotAlgebraMap, "map does not preserve the unit");
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vec l = matvec(m, src.product(i, j), f);
      Vec r = tgt.multiply(matvec(m, src.basis_vec(i), f), matvec(m, src.basis_vec(j), f));
      if (l != r)
        fail(ErrorKind::NotAlgebraMap, "map is not multiplicative on (" + src.label(i) + "," + src.label(j) + ")");
    }
}

/**
 * Pairing transpose of r: A -> B, returned as a (dim A x dim B) matrix R with
 * ∫_A R(b)·a = ∫_B b·r(a).
 */
inline Matrix adjoint(const FrobeniusAlgebra& src, const FrobeniusAlgebra& tgt, const Matrix& r) {
  if (src.field() != tgt.field()) fail(ErrorKind::FieldMismatch, src.name() + " -> " + tgt.name());
  Field f = src.field();
  // h[k][j] = ∫_B Δ'_k r(Δ_j)  ;  column k of R solves g_A^T x = h[k]
  Matrix gi_t = transpose(src.inverse_metric(), f);
  Matrix out = zero_matrix(f, src.dim(), tgt.dim());
  for (std::size_t k = 0; k < tgt.dim(); ++k) {
    Vec h = zero_vec(f, src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Scalar s = Scalar::zero(f);
      for (std::size_t l = 0; l < tgt.dim(); ++l)
        if (!r[l][j].is_zero()) s += r[l][j] * tgt.metric()[k][l];
      h[j] = s;
    }
    Vec x = matvec(gi_t, h, f);
    for (std::size_t i = 0; i < src.dim(); ++i) out[i][k] = x[i];
  }
  return out;
}

}  // namespace arcop
