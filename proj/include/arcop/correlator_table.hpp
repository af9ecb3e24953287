#pragma once

#include <map>
#include <vector>

#include "arcop/bar.hpp"

namespace arcop {

struct Slot {
  WindowLabel label;
  int degree = 0;
  auto operator<=>(const Slot&) const = default;
};

using SlotKey = std::vector<std::size_t>;

/// Multilinear functional on fixed-degree bar spaces, stored as a sparse table
/// over flat basis indices (one index per slot).
class Correlator {
 public:
  Correlator(const BraneSystem& sys, std::vector<Slot> slots) : sys_(&sys), slots_(std::move(slots)) {}

  const BraneSystem& system() const { return *sys_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::map<SlotKey, Scalar>& table() const { return table_; }
  BarSpace space(std::size_t l) const { return BarSpace(*sys_, slots_[l].label, slots_[l].degree); }

  void add(const SlotKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = table_.emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) table_.erase(it);
    }
  }

  Scalar at(const SlotKey& k) const {
    auto it = table_.find(k);
    return it == table_.end() ? Scalar::zero(sys_->field()) : it->second;
  }

  bool is_zero() const { return table_.empty(); }
  bool operator==(const Correlator& o) const { return slots_ == o.slots_ && table_ == o.table_; }

  /// Contracts an input into slot l; degree mismatch gives the zero functional.
  Correlator apply(std::size_t l, const BarElement& x) const {
    if (x.label != slots_[l].label)
      fail(ErrorKind::LabelMismatch, "input label " + x.label.str() + " for slot labelled " + slots_[l].label.str());
    std::vector<Slot> rest = slots_;
    rest.erase(rest.begin() + l);
    Correlator out(*sys_, rest);
    if (x.n != slots_[l].degree) return out;
    BarSpace V = space(l);
    std::map<std::size_t, Scalar> coef;
    for (const auto& [t, c] : x.terms) coef.emplace(V.flat(t), c);
    for (const auto& [k, v] : table_) {
      auto it = coef.find(k[l]);
      if (it == coef.end()) continue;
      SlotKey r = k;
      r.erase(r.begin() + l);
      out.add(r, v * it->second);
    }
    return out;
  }

  /// Value on a full list of inputs (one per slot).
  Scalar evaluate(const std::vector<BarElement>& inputs) const {
    Correlator c = *this;
    for (std::size_t l = inputs.size(); l-- > 0;) c = c.apply(l, inputs[l]);
    return c.at({});
  }

  /// Single-slot functional as the bar element it tabulates.
  BarElement as_element() const {
    if (slots_.size() != 1) fail(ErrorKind::IndexOutOfRange, "as_element needs exactly one slot");
    BarSpace V = space(0);
    BarElement e = bar_zero(slots_[0].label, slots_[0].degree, sys_->field());
    for (const auto& [k, v] : table_) e.add(V.tuple(k[0]), v);
    return e;
  }

 private:
  const BraneSystem* sys_;
  std::vector<Slot> slots_;
  std::map<SlotKey, Scalar> table_;
};

namespace detail {

// For each flat index i of V: the list (flat index of bar Δ_j in V̄, g^ij).
inline std::vector<std::vector<std::pair<std::size_t, Scalar>>> barred_inverse(const BraneSystem& sys, const Slot& s) {
  BarSpace V(sys, s.label, s.degree);
  BarSpace Vb(sys, s.label.bar(), s.degree);
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows(V.size());
  for (std::size_t i = 0; i < V.size(); ++i)
    for (const auto& [j, g] : V.inverse_row(i)) rows[i].emplace_back(Vb.flat(V.bar_tuple(V.tuple(j))), g);
  return rows;
}

}  // namespace detail

/// Σ_ij Y(…, Δ_i, …) g^ij Y′(…, Δ̄_j, …); zero when the labels do not match.
inline Correlator compose_correlators(const Correlator& Y, const Correlator& Yp, std::size_t l0, std::size_t l0p) {
  const Slot& s = Y.slots()[l0];
  const Slot& sp = Yp.slots()[l0p];
  if (s.degree != sp.degree)
    fail(ErrorKind::DegreeMismatch, "slot degrees " + std::to_string(s.degree) + " and " + std::to_string(sp.degree));
  std::vector<Slot> slots;
  for (std::size_t l = 0; l < Y.slots().size(); ++l)
    if (l != l0) slots.push_back(Y.slots()[l]);
  for (std::size_t l = 0; l < Yp.slots().size(); ++l)
    if (l != l0p) slots.push_back(Yp.slots()[l]);
  Correlator out(Y.system(), slots);
  if (s.label != sp.label.bar()) return out;

  auto rows = detail::barred_inverse(Y.system(), s);
  std::map<std::size_t, std::vector<std::pair<SlotKey, Scalar>>> right;
  for (const auto& [k, v] : Yp.table()) {
    SlotKey r = k;
    r.erase(r.begin() + l0p);
    right[k[l0p]].emplace_back(std::move(r), v);
  }
  for (const auto& [k, v] : Y.table()) {
    SlotKey left = k;
    left.erase(left.begin() + l0);
    for (const auto& [jb, g] : rows[k[l0]]) {
      auto it = right.find(jb);
      if (it == right.end()) continue;
      Scalar vg = v * g;
      for (const auto& [rk, rv] : it->second) {
        SlotKey key = left;
        key.insert(key.end(), rk.begin(), rk.end());
        out.add(key, vg * rv);
      }
    }
  }
  return out;
}

/// Contracts slots l0 and l1 of one correlator with the Casimir of slot l0.
inline Correlator self_compose(const Correlator& Y, std::size_t l0, std::size_t l1) {
  const Slot& s = Y.slots()[l0];
  const Slot& s1 = Y.slots()[l1];
  if (s.degree != s1.degree)
    fail(ErrorKind::DegreeMismatch, "slot degrees " + std::to_string(s.degree) + " and " + std::to_string(s1.degree));
  std::vector<Slot> slots;
  for (std::size_t l = 0; l < Y.slots().size(); ++l)
    if (l != l0 && l != l1) slots.push_back(Y.slots()[l]);
  Correlator out(Y.system(), slots);
  if (s.label != s1.label.bar()) return out;
  auto rows = detail::barred_inverse(Y.system(), s);
  for (const auto& [k, v] : Y.table()) {
    for (const auto& [jb, g] : rows[k[l0]]) {
      if (jb != k[l1]) continue;
      SlotKey r;
      for (std::size_t l = 0; l < k.size(); ++l)
        if (l != l0 && l != l1) r.push_back(k[l]);
      out.add(r, v * g);
    }
  }
  return out;
}

/// Dualizes slot l: the result has slot l relabelled bar(β) and tabulates
/// D(…, x) with Y(…, b) = Σ_x D(…, x) ⟨x, b̄⟩.
inline Correlator dualize(const Correlator& Y, std::size_t l) {
  std::vector<Slot> slots = Y.slots();
  slots[l].label = slots[l].label.bar();
  Correlator out(Y.system(), slots);
  auto rows = detail::barred_inverse(Y.system(), Y.slots()[l]);
  for (const auto& [k, v] : Y.table())
    for (const auto& [jb, g] : rows[k[l]]) {
      SlotKey r = k;
      r[l] = jb;
      out.add(r, v * g);
    }
  return out;
}

inline Correlator dualize(const Correlator& Y, const std::vector<std::size_t>& ls) {
  Correlator out = Y;
  for (auto l : ls) out = dualize(out, l);
  return out;
}

}  // namespace arcop
