#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "arcop/frobenius.hpp"

namespace arcop {

using BraneLabel = std::set<std::string>;

inline std::string format_label(const BraneLabel& l) {
  std::string s = "{";
  bool first = true;
  for (const auto& x : l) {
    if (!first) s += ",";
    s += x;
    first = false;
  }
  return s + "}";
}

struct Brane {
  FrobeniusAlgebra algebra;
  Matrix restriction;  // A_∅ -> A_b
  Matrix adjoint;      // A_b -> A_∅
  Vec e_perp;          // r(r†(1))
};

/// Basic brane system: A_∅ plus one algebra per label; A_S = 0 for |S| ≥ 2.
class BraneSystem {
 public:
  BraneSystem() = default;

  BraneSystem(FrobeniusAlgebra closed, std::map<std::string, std::pair<FrobeniusAlgebra, Matrix>> branes)
      : closed_(std::move(closed)) {
    for (auto& [name, br] : branes) {
      validate_algebra_map(closed_, br.first, br.second);
      Brane b{br.first, br.second, adjoint(closed_, br.first, br.second), {}};
      b.e_perp = matvec(b.restriction, matvec(b.adjoint, b.algebra.unit(), field()), field());
      branes_.emplace(name, std::move(b));
    }
  }

  Field field() const { return closed_.field(); }
  const FrobeniusAlgebra& closed() const { return closed_; }
  const std::map<std::string, Brane>& branes() const { return branes_; }

  const Brane& brane(const std::string& b) const {
    auto it = branes_.find(b);
    if (it == branes_.end()) fail(ErrorKind::UnknownBrane, "no brane labelled '" + b + "'");
    return it->second;
  }

  /// Algebra attached to a label set: A_∅, A_b, or nullptr for the zero algebra.
  const FrobeniusAlgebra* algebra(const BraneLabel& s) const {
    if (s.empty()) return &closed_;
    if (s.size() >= 2) return nullptr;
    return &brane(*s.begin()).algebra;
  }

  Vec restrict(const std::string& b, const Vec& a) const { return matvec(brane(b).restriction, a, field()); }
  Vec push(const std::string& b, const Vec& a) const { return matvec(brane(b).adjoint, a, field()); }

 private:
  FrobeniusAlgebra closed_;
  std::map<std::string, Brane> branes_;
};

struct Violation {
  std::string brane;
  std::string a, b;  // basis labels (b empty when unary)
};

struct ConditionReport {
  bool commutative_C = true;
  bool euler_E = true;
  std::vector<Violation> euler_violations;
  bool self_intersection_I1 = true;
  std::vector<Violation> i1_violations;
  bool self_intersection_I2 = true;
  std::vector<Violation> i2_violations;
  bool projection_formula = true;
};

/// r†(r(a)b) = a r†(b) on all basis pairs, using the given adjoint matrices.
inline bool projection_formula_check(const BraneSystem& sys, const std::map<std::string, Matrix>* override_adjoints = nullptr) {
  const auto& A = sys.closed();
  Field f = sys.field();
  for (const auto& [name, br] : sys.branes()) {
    const Matrix& adj = override_adjoints && override_adjoints->count(name) ? override_adjoints->at(name) : br.adjoint;
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < br.algebra.dim(); ++j) {
        Vec lhs = matvec(adj, br.algebra.multiply(matvec(br.restriction, A.basis_vec(i), f), br.algebra.basis_vec(j)), f);
        Vec rhs = A.multiply(A.basis_vec(i), matvec(adj, br.algebra.basis_vec(j), f));
        if (lhs != rhs) return false;
      }
  }
  return true;
}

/// Checks that `adj` is the adjoint of r for brane b on all basis pairs.
inline bool adjoint_identity_holds(const BraneSystem& sys, const std::string& b, const Matrix& adj) {
  const auto& A = sys.closed();
  const auto& br = sys.brane(b);
  Field f = sys.field();
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t k = 0; k < br.algebra.dim(); ++k) {
      Scalar l = A.integrate(A.multiply(matvec(adj, br.algebra.basis_vec(k), f), A.basis_vec(i)));
      Scalar r = br.algebra.integrate(br.algebra.multiply(br.algebra.basis_vec(k), matvec(br.restriction, A.basis_vec(i), f)));
      if (l != r) return false;
    }
  return true;
}

inline ConditionReport check_conditions(const BraneSystem& sys) {
  ConditionReport rep;
  const auto& A = sys.closed();
  Field f = sys.field();
  rep.commutative_C = A.is_commutative();
  for (const auto& [name, br] : sys.branes()) {
    const auto& B = br.algebra;
    auto push = [&](const Vec& v) { return matvec(br.adjoint, v, f); };
    auto restrict = [&](const Vec& v) { return matvec(br.restriction, v, f); };
    for (std::size_t p = 0; p < B.dim(); ++p)
      for (std::size_t q = 0; q < B.dim(); ++q) {
        // (E): Σ r†(a Δ_i) g^ij r†(Δ_j a') = e r†(a a')
        Vec lhs = A.zero();
        for (std::size_t i = 0; i < B.dim(); ++i)
          for (const auto& [j, g] : B.inverse_metric_rows()[i]) {
            Vec l = push(B.product(p, i));
            Vec r = push(B.product(j, q));
            lhs = add(lhs, scale(g, A.multiply(l, r)));
          }
        Vec rhs = A.multiply(A.euler(), push(B.product(p, q)));
        if (lhs != rhs) {
          rep.euler_E = false;
          rep.euler_violations.push_back({name, B.label(p), B.label(q)});
        }
      }
    for (std::size_t p = 0; p < B.dim(); ++p) {
      Vec a = B.basis_vec(p);
      if (restrict(push(a)) != B.multiply(a, br.e_perp)) {
        rep.self_intersection_I1 = false;
        rep.i1_violations.push_back({name, B.label(p), ""});
      }
    }
    if (B.multiply(B.euler(), br.e_perp) != restrict(A.euler())) {
      rep.self_intersection_I2 = false;
      rep.i2_violations.push_back({name, "", ""});
    }
  }
  rep.projection_formula = projection_formula_check(sys);
  if (rep.self_intersection_I1 && rep.self_intersection_I2 && !rep.euler_E)
    throw std::logic_error("conditions (I1) and (I2) hold but (E) fails");
  return rep;
}

}  // namespace arcop
