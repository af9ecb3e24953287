#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "arcop/correlator_table.hpp"
#include "arcop/gluing.hpp"

namespace arcop {

/**
 * How the bar factors of one window decorate its boundary pieces.
 * middle[k] is the tuple position feeding window piece k (1 ≤ k < m), or -1
 * for the unit. Position 0 is the start factor (a_S, or a_0 when closed);
 * the last position is the end factor a_T of an open window.
 */
struct WindowScheme {
  int degree = -1;
  std::vector<int> middle;
};

/// Table 1 scheme: degree m - 1, piece k gets middle factor k.
inline std::vector<WindowScheme> table1_schemes(const Layout& L) {
  std::vector<WindowScheme> s(L.windows.size());
  for (std::size_t w = 0; w < s.size(); ++w) {
    int m = L.ends_in[w];
    s[w].degree = m - 1;
    s[w].middle.assign(std::max(m + 1, 1), -1);
    for (int k = 1; k < m; ++k) s[w].middle[k] = k;
  }
  return s;
}

namespace detail {

// factor of a region product
struct Atom {
  enum Kind { Factor, Push } kind;
  int pos = -1;   // Factor: position index
  int pos2 = -1;  // Push: second position
  std::string brane;
};

struct RegionProgram {
  std::vector<int> positions;           // global position ids used by the region
  std::vector<std::vector<Atom>> cycles;
  int euler_power = 0;
  Vec constant;                         // product of puncture factors
  bool zero = false;
};

}  // namespace detail

/**
 * Extensional correlator of a leaf-level graph under the given schemes:
 * product over regions of ∫ e^{1-χ} · (piece weights in cyclic order) ·
 * (puncture factors).
 */
using Inputs = std::map<int, BarElement>;  // window -> element

/// With `support`, positions of a window holding a matching input only range over the values its terms use.
inline Correlator correlator_table(const BraneSystem& sys, const ArcGraph& leaves, const std::vector<WindowScheme>& schemes,
                                   const Inputs* support = nullptr) {
  Layout L = compute_layout(leaves);
  const auto& A = sys.closed();
  const Field f = sys.field();
  const int W = static_cast<int>(L.windows.size());
  std::vector<Slot> slots;
  std::vector<BarSpace> spaces;
  for (int w = 0; w < W; ++w) {
    slots.push_back({L.windows[w].label, schemes[w].degree});
    spaces.emplace_back(sys, L.windows[w].label, schemes[w].degree);
  }
  Correlator out(sys, slots);
  for (const auto& V : spaces)
    if (V.size() == 0) return out;

  // global positions: (window, tuple position)
  std::vector<std::pair<int, int>> pos_of;
  std::vector<std::vector<int>> pos_id(W);
  for (int w = 0; w < W; ++w)
    for (std::size_t i = 0; i < spaces[w].arity(); ++i) {
      pos_id[w].push_back(static_cast<int>(pos_of.size()));
      pos_of.emplace_back(w, static_cast<int>(i));
    }
  auto last = [&](int w) { return pos_id[w].back(); };
  auto first = [&](int w) { return pos_id[w].front(); };

  bool commutative = A.is_commutative();
  std::vector<detail::RegionProgram> progs;
  std::vector<int> owner(pos_of.size(), -1);
  for (std::size_t r = 0; r < leaves.regions.size(); ++r) {
    const Region& R = leaves.regions[r];
    if (!commutative && R.cycles.size() > 1)
      fail(ErrorKind::NonCommutativeAmbiguity, "region " + std::to_string(r) + " has several boundary cycles");
    detail::RegionProgram P;
    P.euler_power = 1 - R.chi();
    P.constant = A.unit();
    for (const auto& id : R.punctures) {
      const Puncture* pu = nullptr;
      for (const auto& x : leaves.surface.punctures)
        if (x.id == id) pu = &x;
      if (pu->label.empty()) {
        P.constant = A.multiply(P.constant, A.euler());
      } else if (pu->label.size() == 1) {
        const std::string& b = *pu->label.begin();
        P.constant = A.multiply(P.constant, sys.push(b, sys.brane(b).algebra.euler()));
      } else {
        P.zero = true;
      }
    }
    auto use = [&](int p) {
      if (owner[p] != -1 && owner[p] != static_cast<int>(r)) throw std::logic_error("bar factor used by two regions");
      owner[p] = static_cast<int>(r);
      if (std::find(P.positions.begin(), P.positions.end(), p) == P.positions.end()) P.positions.push_back(p);
    };
    for (const auto& c : R.cycles) {
      std::vector<detail::Atom> atoms;
      for (const auto& x : c) {
        if (!x.is_piece) continue;
        const Piece& pc = L.pieces[x.piece];
        if (pc.points.empty()) {
          auto [w, k] = pc.segments[0];
          int mp = schemes[w].middle[k];
          if (mp >= 0) {
            atoms.push_back({detail::Atom::Factor, pos_id[w][mp], -1, {}});
            use(pos_id[w][mp]);
          }
          continue;
        }
        for (std::size_t i = 0; i < pc.points.size(); ++i) {
          int wp = pc.segments[i].first, wn = pc.segments[(i + 1) % pc.segments.size()].first;
          const BraneLabel& lab = leaves.surface.boundaries[pc.boundary][pc.points[i]].label;
          if (lab.empty()) {
            atoms.push_back({detail::Atom::Factor, first(wn), -1, {}});
            use(first(wn));
          } else if (lab.size() == 1) {
            atoms.push_back({detail::Atom::Push, last(wp), first(wn), *lab.begin()});
            use(last(wp));
            use(first(wn));
          } else {
            P.zero = true;
          }
        }
      }
      P.cycles.push_back(atoms);
    }
    progs.push_back(P);
  }
  for (std::size_t p = 0; p < pos_of.size(); ++p)
    if (owner[p] == -1) throw std::logic_error("bar factor not used by any region");

  // push tables r†(Δ_x Δ_y)
  std::map<std::string, std::vector<std::vector<Vec>>> push;
  for (const auto& [b, br] : sys.branes()) {
    auto& t = push[b];
    t.assign(br.algebra.dim(), std::vector<Vec>(br.algebra.dim()));
    for (std::size_t x = 0; x < br.algebra.dim(); ++x)
      for (std::size_t y = 0; y < br.algebra.dim(); ++y) t[x][y] = sys.push(b, br.algebra.product(x, y));
  }
  std::vector<std::vector<int>> allowed(pos_of.size());
  for (std::size_t p = 0; p < pos_of.size(); ++p) {
    auto [w, i] = pos_of[p];
    const BarElement* x = nullptr;
    if (support) {
      auto it = support->find(w);
      if (it != support->end() && it->second.label == slots[w].label && it->second.n == slots[w].degree) x = &it->second;
    }
    if (x) {
      std::set<int> vals;
      for (const auto& [t, c] : x->terms) vals.insert(t[i]);
      allowed[p].assign(vals.begin(), vals.end());
    } else {
      for (std::size_t v = 0; v < spaces[w].factor(i).dim(); ++v) allowed[p].push_back(static_cast<int>(v));
    }
    if (allowed[p].empty()) return out;
  }

  // per-region tables, then outer product
  std::vector<std::pair<std::vector<int>, Scalar>> acc{{std::vector<int>(pos_of.size(), -1), Scalar::one(f)}};
  for (const auto& P : progs) {
    if (P.zero) return out;
    Vec base = P.constant;
    for (int i = 0; i < P.euler_power; ++i) base = A.multiply(base, A.euler());
    std::vector<std::pair<std::vector<int>, Scalar>> table;
    std::vector<int> choice(P.positions.size(), 0), assign(P.positions.size());
    std::map<int, int> local;
    for (std::size_t i = 0; i < P.positions.size(); ++i) local[P.positions[i]] = static_cast<int>(i);
    while (true) {
      for (std::size_t i = 0; i < choice.size(); ++i) assign[i] = allowed[P.positions[i]][choice[i]];
      Vec v = base;
      for (const auto& cyc : P.cycles)
        for (const auto& a : cyc) {
          if (a.kind == detail::Atom::Factor) {
            v = A.multiply(v, A.basis_vec(assign[local[a.pos]]));
          } else {
            v = A.multiply(v, push[a.brane][assign[local[a.pos]]][assign[local[a.pos2]]]);
          }
          if (is_zero(v)) break;
        }
      Scalar s = A.integrate(v);
      if (!s.is_zero()) table.emplace_back(assign, s);
      std::size_t i = 0;
      for (; i < choice.size(); ++i) {
        if (++choice[i] < static_cast<int>(allowed[P.positions[i]].size())) break;
        choice[i] = 0;
      }
      if (i == choice.size()) break;
    }
    std::vector<std::pair<std::vector<int>, Scalar>> next;
    for (const auto& [full, c] : acc)
      for (const auto& [loc, s] : table) {
        std::vector<int> g = full;
        for (std::size_t i = 0; i < loc.size(); ++i) g[P.positions[i]] = loc[i];
        next.emplace_back(std::move(g), c * s);
      }
    acc.swap(next);
    if (acc.empty()) return out;
  }
  for (const auto& [full, c] : acc) {
    SlotKey key(W);
    for (int w = 0; w < W; ++w) {
      Tuple t;
      for (int p : pos_id[w]) t.push_back(full[p]);
      key[w] = spaces[w].flat(t);
    }
    out.add(key, c);
  }
  return out;
}

/// Y_(Γ, wt) on the discrete representative with Table 1 decorations.
inline Correlator correlator(const BraneSystem& sys, const ArcGraph& g, const std::vector<int>& weighting) {
  Expanded X = discrete_representative(g, weighting);
  return correlator_table(sys, X.leaves, table1_schemes(compute_layout(X.leaves)));
}

inline Correlator correlator(const BraneSystem& sys, const ArcGraph& g) { return correlator(sys, g, graph_weights(g)); }

inline std::vector<BarElement> inputs_in_order(const Correlator& Y, const Inputs& in) {
  std::vector<BarElement> v;
  for (std::size_t w = 0; w < Y.slots().size(); ++w) {
    auto it = in.find(static_cast<int>(w));
    if (it == in.end()) fail(ErrorKind::Malformed, "no input for window " + std::to_string(w + 1));
    v.push_back(it->second);
  }
  return v;
}

/// Y_(Γ, wt)(inputs); zero when some input has the wrong degree.
inline Scalar evaluate(const BraneSystem& sys, const ArcGraph& g, const std::vector<int>& weighting, const Inputs& in) {
  Expanded X = discrete_representative(g, weighting);
  Correlator Y = correlator_table(sys, X.leaves, table1_schemes(compute_layout(X.leaves)), &in);
  return Y.evaluate(inputs_in_order(Y, in));
}

/**
 * All positive weightings whose window weights match `target` (−1 leaves a
 * window unconstrained). Arcs without a constrained end are unbounded.
 */
inline std::vector<std::vector<int>> enumerate_weightings(const ArcGraph& g, const std::vector<int>& target) {
  const int n = static_cast<int>(g.arcs.size());
  for (const auto& a : g.arcs)
    if (target[a.end1.window] < 0 && target[a.end2.window] < 0)
      fail(ErrorKind::UnboundedAction, "an arc has no end in a constrained window");
  std::vector<std::vector<int>> out;
  std::vector<int> wt(n, 0), load(target.size(), 0);
  // remaining incidences per window after arc i
  std::vector<std::vector<int>> rest(n + 1, std::vector<int>(target.size(), 0));
  for (int i = n - 1; i >= 0; --i) {
    rest[i] = rest[i + 1];
    ++rest[i][g.arcs[i].end1.window];
    ++rest[i][g.arcs[i].end2.window];
  }
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      for (std::size_t w = 0; w < target.size(); ++w)
        if (target[w] >= 0 && load[w] != target[w]) return;
      out.push_back(wt);
      return;
    }
    const Arc& a = g.arcs[i];
    for (int v = 1;; ++v) {
      load[a.end1.window] += v;
      load[a.end2.window] += v;
      bool ok = true, over = false;
      for (int w : {a.end1.window, a.end2.window}) {
        if (target[w] < 0) continue;
        if (load[w] + (rest[i + 1][w]) > target[w]) over = true;
      }
      if (!over) {
        wt[i] = v;
        go(i + 1);
      }
      load[a.end1.window] -= v;
      load[a.end2.window] -= v;
      if (over) break;
      (void)ok;
    }
  };
  go(0);
  return out;
}

/// Σ over discrete weightings compatible with the input degrees.
inline Scalar evaluate_graph_action(const BraneSystem& sys, const ArcGraph& g, const Inputs& in) {
  std::vector<int> target(windows_of(g.surface).size());
  for (std::size_t w = 0; w < target.size(); ++w) {
    auto it = in.find(static_cast<int>(w));
    if (it == in.end()) fail(ErrorKind::Malformed, "no input for window " + std::to_string(w + 1));
    target[w] = it->second.n + 1;
  }
  Scalar s = Scalar::zero(sys.field());
  for (const auto& wt : enumerate_weightings(g, target)) s += evaluate(sys, g, wt, in);
  return s;
}

/**
 * Operation of the graph: inputs on some windows, outputs dualized on the
 * others. Results grouped by output degrees, as functionals on the barred
 * output spaces.
 */
namespace detail {

template <class MakeY>
std::vector<Correlator> act_with(const BraneSystem& sys, const ArcGraph& g, const Inputs& in, const std::vector<int>& out_windows,
                                 MakeY make) {
  const int W = static_cast<int>(windows_of(g.surface).size());
  std::vector<int> target(W, -1);
  for (const auto& [w, x] : in) target[w] = x.n + 1;
  for (int w = 0; w < W; ++w)
    if (target[w] < 0 && std::find(out_windows.begin(), out_windows.end(), w) == out_windows.end())
      fail(ErrorKind::Malformed, "window " + std::to_string(w + 1) + " is neither input nor output");
  std::map<std::vector<Slot>, Correlator> by_profile;
  for (const auto& wt : enumerate_weightings(g, target)) {
    Correlator Y = make(wt);
    // contract inputs from the highest window down so indices stay valid
    for (int w = W - 1; w >= 0; --w) {
      auto it = in.find(w);
      if (it != in.end()) Y = Y.apply(w, it->second);
    }
    // remaining slots are the outputs in window order; reorder as requested
    std::vector<int> remaining;
    for (int w = 0; w < W; ++w)
      if (!in.count(w)) remaining.push_back(w);
    std::vector<std::size_t> order;
    for (int w : out_windows) order.push_back(std::find(remaining.begin(), remaining.end(), w) - remaining.begin());
    std::vector<Slot> slots;
    for (auto o : order) slots.push_back(Y.slots()[o]);
    Correlator R(sys, slots);
    for (const auto& [k, v] : Y.table()) {
      SlotKey key;
      for (auto o : order) key.push_back(k[o]);
      R.add(key, v);
    }
    std::vector<std::size_t> all(order.size());
    std::iota(all.begin(), all.end(), 0);
    R = dualize(R, all);
    auto [it, ins] = by_profile.emplace(R.slots(), R);
    if (!ins) {
      for (const auto& [k, v] : R.table()) it->second.add(k, v);
    }
  }
  std::vector<Correlator> res;
  for (auto& [p, c] : by_profile) res.push_back(c);
  return res;
}

}  // namespace detail

inline std::vector<Correlator> act(const BraneSystem& sys, const ArcGraph& g, const Inputs& in, const std::vector<int>& out_windows) {
  return detail::act_with(sys, g, in, out_windows, [&](const std::vector<int>& wt) { return correlator(sys, g, wt); });
}

}  // namespace arcop

namespace arcop {

/// Reorders slots: slot i of Y moves to position perm[i].
inline Correlator permute_slots(const Correlator& Y, const std::vector<int>& perm) {
  std::vector<Slot> slots(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) slots[perm[i]] = Y.slots()[i];
  Correlator out(Y.system(), slots);
  for (const auto& [k, v] : Y.table()) {
    SlotKey key(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) key[perm[i]] = k[i];
    out.add(key, v);
  }
  return out;
}

/// Casimir composition of the factors' correlators, slots in the glued graph's window order.
inline Correlator composed_correlator(const BraneSystem& sys, const ArcGraph& a, int wa, const ArcGraph& b, int wb,
                                      const std::map<WindowRef, int>& window_map) {
  Correlator C = compose_correlators(correlator(sys, a), correlator(sys, b), wa, wb);
  std::vector<int> perm;
  for (int w = 0; w < static_cast<int>(windows_of(a.surface).size()); ++w)
    if (w != wa) perm.push_back(window_map.at({0, w}));
  for (int w = 0; w < static_cast<int>(windows_of(b.surface).size()); ++w)
    if (w != wb) perm.push_back(window_map.at({1, w}));
  return permute_slots(C, perm);
}

inline Correlator self_composed_correlator(const BraneSystem& sys, const ArcGraph& g, int w1, int w2,
                                           const std::map<WindowRef, int>& window_map) {
  Correlator C = self_compose(correlator(sys, g), w1, w2);
  std::vector<int> perm;
  for (int w = 0; w < static_cast<int>(windows_of(g.surface).size()); ++w)
    if (w != w1 && w != w2) perm.push_back(window_map.at({0, w}));
  return permute_slots(C, perm);
}

}  // namespace arcop
