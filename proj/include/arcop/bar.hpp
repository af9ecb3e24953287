#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "arcop/system.hpp"

namespace arcop {

/// Window label: open (S, T) or closed.
struct WindowLabel {
  bool closed = true;
  BraneLabel S, T;

  static WindowLabel make_closed() { return {}; }
  static WindowLabel make_open(BraneLabel s, BraneLabel t) { return {false, std::move(s), std::move(t)}; }

  WindowLabel bar() const { return closed ? *this : WindowLabel{false, T, S}; }
  auto operator<=>(const WindowLabel&) const = default;

  std::string str() const { return closed ? std::string("closed") : "(" + format_label(S) + "," + format_label(T) + ")"; }
};

using Tuple = std::vector<int>;

/// Basis of B_n(label): tensor factors with flat indexing.
class BarSpace {
 public:
  BarSpace(const BraneSystem& sys, const WindowLabel& label, int n) : sys_(&sys), label_(label), n_(n) {
    if (n < 0) {
      size_ = 0;
      return;
    }
    if (label.closed) {
      for (int i = 0; i <= n; ++i) factors_.push_back(&sys.closed());
    } else {
      factors_.push_back(sys.algebra(label.S));
      for (int i = 0; i < n; ++i) factors_.push_back(&sys.closed());
      factors_.push_back(sys.algebra(label.T));
    }
    size_ = 1;
    for (auto* f : factors_) size_ *= f ? f->dim() : 0;
    strides_.assign(factors_.size(), 1);
    for (int k = static_cast<int>(factors_.size()) - 2; k >= 0; --k)
      strides_[k] = strides_[k + 1] * (factors_[k + 1] ? factors_[k + 1]->dim() : 0);
  }

  const BraneSystem& system() const { return *sys_; }
  const WindowLabel& label() const { return label_; }
  int degree() const { return n_; }
  std::size_t size() const { return size_; }
  std::size_t arity() const { return factors_.size(); }
  const FrobeniusAlgebra& factor(std::size_t k) const { return *factors_[k]; }

  std::size_t flat(const Tuple& t) const {
    std::size_t r = 0;
    for (std::size_t k = 0; k < t.size(); ++k) r += strides_[k] * static_cast<std::size_t>(t[k]);
    return r;
  }

  Tuple tuple(std::size_t f) const {
    Tuple t(factors_.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = static_cast<int>(f / strides_[k]);
      f %= strides_[k];
    }
    return t;
  }

  /// Flat index of the reversed tuple in the barred space.
  Tuple bar_tuple(const Tuple& t) const {
    Tuple r;
    if (label_.closed) {
      r.push_back(t[0]);
      for (std::size_t k = t.size() - 1; k >= 1; --k) r.push_back(t[k]);
    } else {
      r.assign(t.rbegin(), t.rend());
    }
    return r;
  }

  /// Factorwise metric between basis tuples.
  Scalar metric(const Tuple& a, const Tuple& b) const {
    Scalar s = Scalar::one(sys_->field());
    for (std::size_t k = 0; k < a.size(); ++k) {
      s *= factors_[k]->metric()[a[k]][b[k]];
      if (s.is_zero()) break;
    }
    return s;
  }

  /// Nonzero entries of row `f` of the factorwise inverse metric.
  std::vector<std::pair<std::size_t, Scalar>> inverse_row(std::size_t f) const {
    Tuple t = tuple(f);
    std::vector<std::pair<std::size_t, Scalar>> out{{0, Scalar::one(sys_->field())}};
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<std::pair<std::size_t, Scalar>> next;
      for (const auto& [base, c] : out)
        for (const auto& [j, g] : factors_[k]->inverse_metric_rows()[t[k]])
          next.emplace_back(base + strides_[k] * j, c * g);
      out.swap(next);
    }
    return out;
  }

  std::string format_tuple(const Tuple& t) const {
    std::string s;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += "⊗";
      s += factors_[k]->label(t[k]);
    }
    return s;
  }

 private:
  const BraneSystem* sys_;
  WindowLabel label_;
  int n_;
  std::vector<const FrobeniusAlgebra*> factors_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Homogeneous element of B_n(label); n = -1 denotes the zero space below degree 0.
struct BarElement {
  WindowLabel label;
  int n = 0;
  Field field = Field::Q;
  std::map<Tuple, Scalar> terms;

  void add(const Tuple& t, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms.emplace(t, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  void add(const BarElement& o, const Scalar& c) {
    for (const auto& [t, v] : o.terms) add(t, c * v);
  }
  bool is_zero() const { return terms.empty(); }
  bool operator==(const BarElement& o) const {
    return label == o.label && n == o.n && terms == o.terms;
  }
};

inline BarElement bar_zero(const WindowLabel& l, int n, Field f) { return BarElement{l, n, f, {}}; }

inline BarElement bar_basis(const BraneSystem& sys, const WindowLabel& l, const Tuple& t) {
  BarElement e{l, static_cast<int>(t.size()) - (l.closed ? 1 : 2), sys.field(), {}};
  e.add(t, Scalar::one(sys.field()));
  return e;
}

inline std::string format_bar(const BraneSystem& sys, const BarElement& x) {
  if (x.terms.empty()) return "0";
  BarSpace V(sys, x.label, x.n);
  std::string s;
  for (const auto& [t, c] : x.terms) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += c.str() + "*";
    s += V.format_tuple(t);
  }
  return s;
}

namespace detail {

// Replaces positions [pos, pos+width) of t by each basis index of v, scaled by c.
inline void splice(BarElement& out, const Tuple& t, std::size_t pos, std::size_t width, const Vec& v, const Scalar& c) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    Tuple r(t.begin(), t.begin() + pos);
    r.push_back(static_cast<int>(k));
    r.insert(r.end(), t.begin() + pos + width, t.end());
    out.add(r, c * v[k]);
  }
}

}  // namespace detail

/// i-th face map.
inline BarElement face(const BraneSystem& sys, const BarElement& x, int i) {
  const int n = x.n;
  if (i < 0 || i > n) fail(ErrorKind::IndexOutOfRange, "face index " + std::to_string(i));
  BarElement out = bar_zero(x.label, n - 1, x.field);
  const auto& A = sys.closed();
  for (const auto& [t, c] : x.terms) {
    if (x.label.closed) {
      if (i < n) {
        detail::splice(out, t, i, 2, A.product(t[i], t[i + 1]), c);
      } else {
        Tuple r(t.begin(), t.end() - 1);
        Vec v = A.product(t[n], t[0]);
        Tuple rest(r.begin() + 1, r.end());
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (v[k].is_zero()) continue;
          Tuple s{static_cast<int>(k)};
          s.insert(s.end(), rest.begin(), rest.end());
          out.add(s, c * v[k]);
        }
      }
    } else {
      const std::string& Sb = *x.label.S.begin();
      const std::string& Tb = *x.label.T.begin();
      if (i == 0) {
        const auto& AS = sys.brane(Sb).algebra;
        Vec v = AS.multiply(AS.basis_vec(t[0]), sys.restrict(Sb, A.basis_vec(t[1])));
        detail::splice(out, t, 0, 2, v, c);
      } else if (i == n) {
        const auto& AT = sys.brane(Tb).algebra;
        Vec v = AT.multiply(sys.restrict(Tb, A.basis_vec(t[n])), AT.basis_vec(t[n + 1]));
        detail::splice(out, t, n, 2, v, c);
      } else {
        detail::splice(out, t, i, 2, A.product(t[i], t[i + 1]), c);
      }
    }
  }
  return out;
}

/// d = Σ (-1)^i d_i; zero below degree 1.
inline BarElement differential(const BraneSystem& sys, const BarElement& x) {
  BarElement out = bar_zero(x.label, x.n - 1, x.field);
  if (x.n < 1) return out;
  Scalar one = Scalar::one(x.field);
  for (int i = 0; i <= x.n; ++i) out.add(face(sys, x, i), (i % 2) ? -one : one);
  return out;
}

/// Inserts the unit as middle factor number i (1 ≤ i ≤ n+1).
inline BarElement degeneracy(const BraneSystem& sys, int i, const BarElement& x) {
  if (i < 1 || i > x.n + 1) fail(ErrorKind::IndexOutOfRange, "degeneracy index " + std::to_string(i));
  BarElement out = bar_zero(x.label, x.n + 1, x.field);
  // middle factor i sits at tuple position i in both conventions
  for (const auto& [t, c] : x.terms) {
    Tuple r = t;
    r.insert(r.begin() + i, 0);
    detail::splice(out, r, i, 1, sys.closed().unit(), c);
  }
  return out;
}

inline BarElement involution(const BraneSystem& sys, const BarElement& x) {
  BarSpace V(sys, x.label, x.n);
  BarElement out = bar_zero(x.label.bar(), x.n, x.field);
  for (const auto& [t, c] : x.terms) out.add(V.bar_tuple(t), c);
  return out;
}

/// Closed terms with a unit middle factor vanish in the reduced complex.
inline bool is_reduced(const BraneSystem& sys, const BarElement& x) {
  if (!x.label.closed) return true;
  int u = sys.closed().unit_index();
  for (const auto& [t, c] : x.terms)
    for (std::size_t k = 1; k < t.size(); ++k)
      if (t[k] == u) return false;
  return true;
}

inline BarElement reduce(const BraneSystem& sys, const BarElement& x) {
  if (!x.label.closed) return x;
  int u = sys.closed().unit_index();
  BarElement out = bar_zero(x.label, x.n, x.field);
  for (const auto& [t, c] : x.terms) {
    bool keep = true;
    for (std::size_t k = 1; k < t.size(); ++k) keep = keep && t[k] != u;
    if (keep) out.add(t, c);
  }
  return out;
}

/// Factorwise trace pairing of two elements of the same space.
inline Scalar pairing(const BraneSystem& sys, const BarElement& x, const BarElement& y) {
  if (x.label != y.label || x.n != y.n) fail(ErrorKind::LabelMismatch, "pairing of different spaces");
  BarSpace V(sys, x.label, x.n);
  Scalar s = Scalar::zero(sys.field());
  for (const auto& [a, c] : x.terms)
    for (const auto& [b, d] : y.terms) s += c * d * V.metric(a, b);
  return s;
}

struct CasimirTerm {
  Tuple left;        // basis tuple of B_n(label)
  Tuple right_bar;   // reversed dual tuple in B_n(bar label)
  Scalar coef;
};

inline std::vector<CasimirTerm> casimir(const BraneSystem& sys, const WindowLabel& label, int n) {
  BarSpace V(sys, label, n);
  std::vector<CasimirTerm> out;
  for (std::size_t i = 0; i < V.size(); ++i)
    for (const auto& [j, g] : V.inverse_row(i)) out.push_back({V.tuple(i), V.bar_tuple(V.tuple(j)), g});
  return out;
}

/// Pairing adjoint of d: ⟨δx, y⟩ = ⟨x, dy⟩ for y of degree n+1.
inline BarElement coboundary(const BraneSystem& sys, const BarElement& x) {
  BarSpace W(sys, x.label, x.n + 1);
  BarElement out = bar_zero(x.label, x.n + 1, x.field);
  for (std::size_t c = 0; c < W.size(); ++c) {
    Scalar p = pairing(sys, x, differential(sys, bar_basis(sys, x.label, W.tuple(c))));
    if (p.is_zero()) continue;
    for (const auto& [j, g] : W.inverse_row(c)) out.add(W.tuple(j), p * g);
  }
  return out;
}

}  // namespace arcop
