#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "arcop/correlator.hpp"
#include "arcop/gluing.hpp"
#include "arcop/iso.hpp"

namespace arcop {

inline void check_io(const ArcGraph& g, const IoPartition& io) {
  const int W = static_cast<int>(windows_of(g.surface).size());
  std::vector<int> seen(W, 0);
  for (const auto* part : {&io.in, &io.out})
    for (int w : *part) {
      if (w < 0 || w >= W) fail(ErrorKind::IndexOutOfRange, "io names window " + std::to_string(w + 1));
      if (seen[w]++) fail(ErrorKind::Malformed, "window " + std::to_string(w + 1) + " is both in and out");
    }
  for (int w = 0; w < W; ++w)
    if (!seen[w]) fail(ErrorKind::Malformed, "window " + std::to_string(w + 1) + " is neither in nor out");
}

inline const IoPartition& io_of(const ArcGraph& g) {
  if (!g.io) fail(ErrorKind::Malformed, "graph carries no in/out partition");
  return *g.io;
}

/// Arcs run from in to out windows and every in window is active.
inline bool is_sullivan(const ArcGraph& g, const IoPartition& io) {
  check_io(g, io);
  std::set<int> in(io.in.begin(), io.in.end());
  for (const auto& a : g.arcs)
    if (in.count(a.end1.window) == in.count(a.end2.window)) return false;
  std::vector<int> touched(windows_of(g.surface).size(), 0);
  for (const auto& a : g.arcs) touched[a.end1.window] = touched[a.end2.window] = 1;
  for (int w : io.in)
    if (!touched[w]) return false;
  return true;
}

inline bool is_sullivan(const ArcGraph& g) { return is_sullivan(g, io_of(g)); }

/**
 * Decorations for Sullivan graphs: on out windows the pieces between two
 * different bands carry the unit, and an inactive out window has degree 0.
 */
inline std::vector<WindowScheme> sullivan_schemes(const Expanded& X, const IoPartition& io) {
  Layout L = compute_layout(X.leaves);
  auto s = table1_schemes(L);
  for (int w : io.out) {
    int m = L.ends_in[w];
    if (m == 0) {
      s[w] = {0, {-1}};
      continue;
    }
    int deg = 0;
    for (int k = 1; k < m; ++k) {
      bool rect = X.leaf_arc[L.slot_owner[w][k - 1].first] == X.leaf_arc[L.slot_owner[w][k].first];
      s[w].middle[k] = rect ? ++deg : -1;
    }
    s[w].degree = deg;
  }
  return s;
}

/// Middle positions (1-based) that receive a unit on each out window.
inline std::map<int, std::vector<int>> unit_pieces(const Expanded& X, const IoPartition& io) {
  Layout L = compute_layout(X.leaves);
  std::map<int, std::vector<int>> out;
  for (int w : io.out)
    for (int k = 1; k < L.ends_in[w]; ++k)
      if (X.leaf_arc[L.slot_owner[w][k - 1].first] != X.leaf_arc[L.slot_owner[w][k].first]) out[w].push_back(k);
  return out;
}

/// Y^{i/o} of one discrete weighting, through the Sullivan decorations.
inline Correlator io_correlator(const BraneSystem& sys, const ArcGraph& g, const IoPartition& io, const std::vector<int>& weighting) {
  Expanded X = discrete_representative(g, weighting);
  return correlator_table(sys, X.leaves, sullivan_schemes(X, io));
}

/// Y^{i/o} of one discrete weighting via degeneracies on the out inputs and plain decorations.
inline Scalar io_evaluate_by_degeneracies(const BraneSystem& sys, const ArcGraph& g, const IoPartition& io,
                                          const std::vector<int>& weighting, Inputs in) {
  Expanded X = discrete_representative(g, weighting);
  for (const auto& [w, ks] : unit_pieces(X, io)) {
    BarElement& x = in.at(w);
    for (int k : ks) {
      if (k > x.n + 1) return Scalar::zero(sys.field());
      x = degeneracy(sys, k, x);
    }
  }
  for (int w : io.out)
    if (window_weight(g, weighting, w) == 0) fail(ErrorKind::InactiveWindow, "no degeneracy form for an inactive out window");
  Correlator Y = correlator_table(sys, X.leaves, table1_schemes(compute_layout(X.leaves)));
  return Y.evaluate(inputs_in_order(Y, in));
}

/// Discrete weightings matching the in-window degrees (out windows free).
inline std::vector<std::vector<int>> io_weightings(const ArcGraph& g, const IoPartition& io, const Inputs& in) {
  std::vector<int> target(windows_of(g.surface).size(), -1);
  for (int w : io.in) target[w] = in.at(w).n + 1;
  return enumerate_weightings(g, target);
}

/// Σ over weightings of Y^{i/o}(inputs on every window).
inline Scalar evaluate_io(const BraneSystem& sys, const ArcGraph& g, const IoPartition& io, const Inputs& in) {
  if (!is_sullivan(g, io)) fail(ErrorKind::NotSullivanType, "graph is not of Sullivan type");
  Scalar s = Scalar::zero(sys.field());
  for (const auto& wt : io_weightings(g, io, in)) {
    Expanded X = discrete_representative(g, wt);
    Correlator Y = correlator_table(sys, X.leaves, sullivan_schemes(X, io), &in);
    s += Y.evaluate(inputs_in_order(Y, in));
  }
  return s;
}

/// Same sum computed through degeneracies; needs every out window active.
inline Scalar evaluate_io_by_degeneracies(const BraneSystem& sys, const ArcGraph& g, const IoPartition& io, const Inputs& in) {
  if (!is_sullivan(g, io)) fail(ErrorKind::NotSullivanType, "graph is not of Sullivan type");
  Scalar s = Scalar::zero(sys.field());
  for (const auto& wt : io_weightings(g, io, in)) s += io_evaluate_by_degeneracies(sys, g, io, wt, in);
  return s;
}

/// Operation of a Sullivan graph: in windows fed, out windows dualized.
inline std::vector<Correlator> act_io(const BraneSystem& sys, const ArcGraph& g, const IoPartition& io, const Inputs& in) {
  if (!is_sullivan(g, io)) fail(ErrorKind::NotSullivanType, "graph is not of Sullivan type");
  for (int w : io.in)
    if (!in.count(w)) fail(ErrorKind::Malformed, "no input for in window " + std::to_string(w + 1));
  return detail::act_with(sys, g, in, io.out, [&](const std::vector<int>& wt) { return io_correlator(sys, g, io, wt); });
}

// ---------------------------------------------------------------- gluing

/// Removes the given arcs and recomputes regions; parallel leftovers merge into bands.
inline GlueResult delete_arcs(const ArcGraph& g, const std::set<int>& arcs) {
  detail::EngineInput in;
  Expanded X = discrete_representative(g);
  in.graphs = {X.leaves};
  for (std::size_t l = 0; l < X.leaf_arc.size(); ++l)
    if (arcs.count(X.leaf_arc[l])) in.deleted.insert({0, static_cast<int>(l)});
  auto r = detail::finish(detail::glue_leaves(in));
  if (g.io) r.graph.io = detail::map_io({g.io}, r.window_map);
  return r;
}

/**
 * Out window wl of `left` glued to in window wr of `right`. An inactive out
 * window removes the foliation entering from the in side.
 */
inline GlueResult extended_glue(const ArcGraph& left, int wl, const ArcGraph& right, int wr) {
  auto ws_l = windows_of(left.surface), ws_r = windows_of(right.surface);
  if (wl < 0 || wl >= static_cast<int>(ws_l.size())) fail(ErrorKind::IndexOutOfRange, "no window " + std::to_string(wl + 1));
  if (wr < 0 || wr >= static_cast<int>(ws_r.size())) fail(ErrorKind::IndexOutOfRange, "no window " + std::to_string(wr + 1));
  if (ws_l[wl].closed != ws_r[wr].closed) fail(ErrorKind::KindMismatch, "cannot glue a closed window to an open one");
  int al = window_weight(left, graph_weights(left), wl), ar = window_weight(right, graph_weights(right), wr);
  if (ar == 0) fail(ErrorKind::InactiveWindow, "in window " + std::to_string(wr + 1) + " is inactive");
  if (al > 0) return glue(left, wl, right, wr);

  detail::EngineInput del;
  Expanded R = discrete_representative(right);
  del.graphs = {R.leaves};
  for (std::size_t l = 0; l < R.leaves.arcs.size(); ++l) {
    const Arc& a = R.leaves.arcs[l];
    if (a.end1.window == wr || a.end2.window == wr) del.deleted.insert({0, static_cast<int>(l)});
  }
  auto stripped = detail::glue_leaves(del);
  detail::EngineInput in;
  in.graphs = {discrete_representative(left).leaves, stripped.graph};
  in.glue = {{{0, wl}, {1, stripped.window_map.at({0, wr})}}};
  auto r = detail::finish(detail::glue_leaves(in));
  // express the map in terms of the original right operand
  std::map<WindowRef, int> wm;
  for (const auto& [ref, nw] : r.window_map) {
    if (ref.first == 0) {
      wm[ref] = nw;
      continue;
    }
    for (const auto& [orig, mid] : stripped.window_map)
      if (mid == ref.second) wm[{1, orig.second}] = nw;
  }
  r.window_map = wm;
  if (left.io || right.io) r.graph.io = detail::map_io({left.io, right.io}, r.window_map);
  return r;
}

inline int inactive_out_count(const ArcGraph& g) {
  if (!g.io) return 0;
  auto wt = graph_weights(g);
  int n = 0;
  for (int w : g.io->out) n += window_weight(g, wt, w) == 0;
  return n;
}

// ---------------------------------------------------------------- cells

/// Cell of the Sullivan complex: the combinatorial type of a Sullivan graph.
struct SullivanCell {
  ArcGraph graph;  // weights normalized to 1, io set

  int dimension() const { return static_cast<int>(graph.arcs.size()) - static_cast<int>(io_of(graph).in.size()); }
  std::string key() const { return labelled_form(graph); }
};

inline SullivanCell make_cell(ArcGraph g, const IoPartition& io) {
  if (!is_sullivan(g, io)) fail(ErrorKind::NotSullivanType, "graph is not of Sullivan type");
  for (auto& a : g.arcs) a.weight = 1;
  g.io = io;
  return SullivanCell{g};
}

inline SullivanCell make_cell(const ArcGraph& g) { return make_cell(g, io_of(g)); }

/// Formal sum of cells over F2; windows stay numbered.
struct CellSum {
  std::map<std::string, SullivanCell> terms;

  void toggle(const SullivanCell& c) {
    auto k = c.key();
    auto it = terms.find(k);
    if (it == terms.end())
      terms.emplace(k, c);
    else
      terms.erase(it);
  }
  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

/// Faces: delete one arc; faces leaving the Sullivan space or collapsing bands are dropped.
inline CellSum cell_boundary(const SullivanCell& c) {
  CellSum out;
  const ArcGraph& g = c.graph;
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
    GlueResult r;
    try {
      r = delete_arcs(g, {a});
    } catch (const Error&) {
      continue;
    }
    if (r.graph.arcs.size() + 1 != g.arcs.size()) continue;
    bool parallel_merge = false;
    for (const auto& x : r.graph.arcs) parallel_merge |= x.weight != 1;
    if (parallel_merge || !is_sullivan(r.graph)) continue;
    out.toggle(SullivanCell{r.graph});
  }
  return out;
}

inline CellSum cell_boundary(const CellSum& s) {
  CellSum out;
  for (const auto& [k, c] : s.terms)
    for (const auto& [k2, f] : cell_boundary(c).terms) out.toggle(f);
  return out;
}

struct CellComposition {
  CellSum sum;                               // outcome types, each listed once
  std::map<std::string, int> multiplicity;  // interleaving patterns realizing each type
  std::map<WindowRef, int> window_map;  // shared by every term
};

namespace detail {

// compositions of `total` into `parts` positive entries
inline void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> c(parts, 1);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == parts - 1) {
      c[i] = left;
      f(c);
      return;
    }
    for (int v = 1; v <= left - (parts - 1 - i); ++v) {
      c[i] = v;
      go(i + 1, left - v);
    }
  };
  if (parts > 0 && total >= parts) go(0, total);
}

// arcs meeting window w, in slot order
inline std::vector<int> arcs_in_slot_order(const ArcGraph& g, int w) {
  Layout L = compute_layout(g);
  std::vector<int> out;
  for (const auto& [a, e] : L.slot_owner[w]) out.push_back(a);
  return out;
}

}  // namespace detail

/**
 * Cell-level composition: glue out window `pair.first` of c1 to in window
 * `pair.second` of c2 over all weightings agreeing on the glued windows and
 * keep the outcomes with the largest number of arcs. Only the arcs meeting
 * the glued windows carry weights; their window total runs up to
 * p + q - 1 + slack, which already realizes every interleaving of the cuts.
 */
inline CellComposition cell_compose(const SullivanCell& c1, const SullivanCell& c2, std::pair<int, int> pair, int slack = 0) {
  const auto& [wo, wi] = pair;
  const IoPartition& io1 = io_of(c1.graph);
  const IoPartition& io2 = io_of(c2.graph);
  if (std::find(io1.out.begin(), io1.out.end(), wo) == io1.out.end())
    fail(ErrorKind::PairingMismatch, "window " + std::to_string(wo + 1) + " is not an out window");
  if (std::find(io2.in.begin(), io2.in.end(), wi) == io2.in.end())
    fail(ErrorKind::PairingMismatch, "window " + std::to_string(wi + 1) + " is not an in window");
  const Window x = windows_of(c1.graph.surface).at(wo);
  const Window y = windows_of(c2.graph.surface).at(wi);
  if (x.closed != y.closed) fail(ErrorKind::KindMismatch, "cannot glue a closed window to an open one");
  if (!(x.label == y.label.bar()))
    fail(ErrorKind::PairingMismatch, "window labels " + x.label.str() + " and " + y.label.str() + " do not pair");

  auto a1 = detail::arcs_in_slot_order(c1.graph, wo);
  auto a2 = detail::arcs_in_slot_order(c2.graph, wi);
  const int p = static_cast<int>(a1.size()), q = static_cast<int>(a2.size());
  CellComposition res;
  std::map<std::string, std::pair<SullivanCell, int>> found;  // type -> (cell, number of patterns)
  std::size_t best = 0;
  auto run = [&](const ArcGraph& g1, const ArcGraph& g2) {
    GlueResult r = extended_glue(g1, wo, g2, wi);
    res.window_map = r.window_map;
    if (r.graph.arcs.size() < best) return;
    if (r.graph.arcs.size() > best) {
      best = r.graph.arcs.size();
      found.clear();
    }
    SullivanCell c = make_cell(r.graph);
    ++found.try_emplace(c.key(), c, 0).first->second.second;
  };
  if (p == 0) {
    run(c1.graph, c2.graph);
  } else {
    std::set<std::pair<std::vector<int>, std::vector<int>>> patterns;
    for (int total = std::max(p, q); total <= p + q - 1 + slack; ++total)
      detail::for_each_composition(total, p, [&](const std::vector<int>& w1) {
        detail::for_each_composition(total, q, [&](const std::vector<int>& w2) {
          // cut points along the glued window; the far side runs backwards
          std::vector<int> cut1, cut2, all;
          int acc = 0;
          for (int i = 0; i + 1 < p; ++i) cut1.push_back(acc += w1[i]);
          acc = 0;
          for (int i = 0; i + 1 < q; ++i) cut2.push_back(total - (acc += w2[i]));
          all = cut1;
          all.insert(all.end(), cut2.begin(), cut2.end());
          std::sort(all.begin(), all.end());
          all.erase(std::unique(all.begin(), all.end()), all.end());
          auto rank = [&](std::vector<int> v) {
            for (int& t : v) t = static_cast<int>(std::lower_bound(all.begin(), all.end(), t) - all.begin());
            return v;
          };
          if (!patterns.insert({rank(cut1), rank(cut2)}).second) return;
          ArcGraph g1 = c1.graph, g2 = c2.graph;
          for (int i = 0; i < p; ++i) g1.arcs[a1[i]].weight = w1[i];
          for (int i = 0; i < q; ++i) g2.arcs[a2[i]].weight = w2[i];
          run(g1, g2);
        });
      });
  }
  for (auto& [k, c] : found) {
    res.multiplicity[k] = c.second;
    res.sum.terms.emplace(k, c.first);
  }
  return res;
}

/// Chain-level composition over F2; outcomes below dimension d1 + d2 are degenerate and dropped.
inline CellComposition cell_compose(const CellSum& a, const CellSum& b, std::pair<int, int> pair) {
  CellComposition res;
  for (const auto& [ka, x] : a.terms)
    for (const auto& [kb, y] : b.terms) {
      auto r = cell_compose(x, y, pair);
      res.window_map = r.window_map;
      for (const auto& [k, c] : r.sum.terms)
        if (c.dimension() == x.dimension() + y.dimension() && r.multiplicity.at(k) % 2 == 1) res.sum.toggle(c);
    }
  return res;
}

// ---------------------------------------------------------------- dg property

struct DgReport {
  int profiles = 0;     // in-degree profiles examined
  int entries = 0;      // nonzero table entries compared
  int mismatches = 0;
  std::string first_mismatch;
};

namespace detail {

using Functional = std::map<std::vector<int>, std::map<SlotKey, Scalar>>;  // degree profile -> table

inline void accumulate(Functional& F, const std::vector<int>& profile, const SlotKey& k, const Scalar& v) {
  if (v.is_zero()) return;
  auto& t = F[profile];
  auto [it, ins] = t.emplace(k, v);
  if (!ins) {
    it->second += v;
    if (it->second.is_zero()) t.erase(it);
  }
}

// y -> [(x, c)] with c the coefficient of y in op(x), for basis x of B_n(label)
inline std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> transpose_of(
    const BraneSystem& sys, const WindowLabel& l, int n, bool up) {
  BarSpace V(sys, l, n), U(sys, l, up ? n + 1 : n - 1);
  std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> out;
  for (std::size_t x = 0; x < V.size(); ++x) {
    BarElement b = bar_basis(sys, l, V.tuple(x));
    BarElement y = up ? coboundary(sys, b) : differential(sys, b);
    for (const auto& [t, c] : y.terms) out[U.flat(t)].emplace_back(x, c);
  }
  return out;
}

inline std::vector<std::vector<int>> profiles_up_to(int slots, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(slots, 0);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == slots) {
      out.push_back(p);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      p[i] = v;
      go(i + 1, left - v);
    }
  };
  go(0, total);
  return out;
}

}  // namespace detail

/**
 * Checks Y(∂Γ)(a, b) = Σ_in Y(Γ)(δa, b) + Σ_out Y(Γ)(a, d b) over F2 for all
 * basis inputs with in degrees summing to at most max_in_degree.
 */
inline DgReport check_dg(const BraneSystem& sys, const SullivanCell& cell, int max_in_degree) {
  if (sys.field() != Field::F2) fail(ErrorKind::FieldMismatch, "the dg check runs over F2");
  const ArcGraph& g = cell.graph;
  const IoPartition& io = io_of(g);
  const int W = static_cast<int>(windows_of(g.surface).size());
  auto labels = windows_of(g.surface);

  struct Face {
    ArcGraph graph;
    std::vector<int> to_parent;  // face window -> Γ window
  };
  std::vector<Face> faces;
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
    GlueResult r;
    try {
      r = delete_arcs(g, {a});
    } catch (const Error&) {
      continue;
    }
    if (r.graph.arcs.size() + 1 != g.arcs.size()) continue;
    bool merged = false;
    for (const auto& x : r.graph.arcs) merged |= x.weight != 1;
    if (merged || !is_sullivan(r.graph)) continue;
    Face f{r.graph, std::vector<int>(W)};
    for (const auto& [ref, nw] : r.window_map) f.to_parent[nw] = ref.second;
    faces.push_back(f);
  }

  auto weightings_for = [&](const ArcGraph& h, const std::vector<int>& target) {
    return enumerate_weightings(h, target);
  };
  auto add_table = [&](detail::Functional& F, const Correlator& Y, const std::vector<int>& perm) {
    std::vector<int> prof(W);
    for (int w = 0; w < static_cast<int>(perm.size()); ++w) prof[perm[w]] = Y.slots()[w].degree;
    for (const auto& [k, v] : Y.table()) {
      SlotKey key(W);
      for (int w = 0; w < static_cast<int>(perm.size()); ++w) key[perm[w]] = k[w];
      detail::accumulate(F, prof, key, v);
    }
  };
  std::vector<int> ident(W);
  std::iota(ident.begin(), ident.end(), 0);

  DgReport rep;
  for (const auto& nin : detail::profiles_up_to(static_cast<int>(io.in.size()), max_in_degree)) {
    ++rep.profiles;
    detail::Functional lhs, rhs;
    // faces
    for (const auto& f : faces) {
      std::vector<int> target(W, -1);
      for (int w = 0; w < W; ++w)
        for (std::size_t i = 0; i < io.in.size(); ++i)
          if (f.to_parent[w] == io.in[i]) target[w] = nin[i] + 1;
      for (const auto& wt : weightings_for(f.graph, target)) add_table(lhs, io_correlator(sys, f.graph, io_of(f.graph), wt), f.to_parent);
    }
    // δ on an in slot: Γ with that in degree raised
    for (std::size_t i = 0; i < io.in.size(); ++i) {
      int w = io.in[i];
      std::vector<int> target(W, -1);
      for (std::size_t j = 0; j < io.in.size(); ++j) target[io.in[j]] = nin[j] + 1 + (j == i);
      auto tr = detail::transpose_of(sys, labels[w].label, nin[i], true);
      for (const auto& wt : weightings_for(g, target)) {
        Correlator Y = io_correlator(sys, g, io, wt);
        std::vector<int> prof(W);
        for (int v = 0; v < W; ++v) prof[v] = Y.slots()[v].degree;
        prof[w] = nin[i];
        for (const auto& [k, val] : Y.table()) {
          auto it = tr.find(k[w]);
          if (it == tr.end()) continue;
          for (const auto& [x, c] : it->second) {
            SlotKey key = k;
            key[w] = x;
            detail::accumulate(rhs, prof, key, c * val);
          }
        }
      }
    }
    // d on an out slot: Γ at the given in degrees
    {
      std::vector<int> target(W, -1);
      for (std::size_t j = 0; j < io.in.size(); ++j) target[io.in[j]] = nin[j] + 1;
      for (const auto& wt : weightings_for(g, target)) {
        Correlator Y = io_correlator(sys, g, io, wt);
        for (int w : io.out) {
          int deg = Y.slots()[w].degree;
          auto tr = detail::transpose_of(sys, labels[w].label, deg + 1, false);
          std::vector<int> prof(W);
          for (int v = 0; v < W; ++v) prof[v] = Y.slots()[v].degree;
          prof[w] = deg + 1;
          for (const auto& [k, val] : Y.table()) {
            auto it = tr.find(k[w]);
            if (it == tr.end()) continue;
            for (const auto& [x, c] : it->second) {
              SlotKey key = k;
              key[w] = x;
              detail::accumulate(rhs, prof, key, c * val);
            }
          }
        }
      }
    }
    for (auto* F : {&lhs, &rhs})
      for (auto it = F->begin(); it != F->end();) it = it->second.empty() ? F->erase(it) : std::next(it);
    for (const auto& [p, t] : lhs) rep.entries += static_cast<int>(t.size());
    if (lhs != rhs) {
      ++rep.mismatches;
      if (rep.first_mismatch.empty()) {
        std::string s = "in degrees";
        for (int v : nin) s += " " + std::to_string(v);
        rep.first_mismatch = s;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- closed forms

namespace detail {

inline BarElement tensor_tuple(const BraneSystem& sys, const WindowLabel& l, const std::vector<Vec>& factors) {
  BarElement out = bar_zero(l, static_cast<int>(factors.size()) - (l.closed ? 1 : 2), sys.field());
  std::vector<std::pair<Tuple, Scalar>> acc{{{}, Scalar::one(sys.field())}};
  for (const auto& f : factors) {
    std::vector<std::pair<Tuple, Scalar>> next;
    for (const auto& [t, c] : acc)
      for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) {
          Tuple u = t;
          u.push_back(static_cast<int>(i));
          next.emplace_back(u, c * f[i]);
        }
    acc.swap(next);
  }
  for (const auto& [t, c] : acc) out.add(t, c);
  return out;
}

}  // namespace detail

/**
 * Open multiplication of the triangle on basis tuples a ∈ B_n(T,S), b ∈ B_m(S,U).
 * `sullivan` selects the string-topology form with scalar prefactor ∫_S a_S b_S;
 * otherwise r†_S(a_S b_S) is inserted between the two middles.
 */
inline BarElement triangle_product(const BraneSystem& sys, const WindowLabel& la, const Tuple& a, const WindowLabel& lb,
                                   const Tuple& b, bool sullivan) {
  if (la.closed || lb.closed || la.T != lb.S) fail(ErrorKind::LabelMismatch, "labels do not compose");
  const std::string brane = *la.T.begin();
  const FrobeniusAlgebra& AS = sys.brane(brane).algebra;
  const FrobeniusAlgebra& A = sys.closed();
  std::vector<Vec> f;
  f.push_back(unit_vec(sys.field(), sys.algebra(la.S)->dim(), a.front()));
  for (std::size_t i = 1; i + 1 < a.size(); ++i) f.push_back(unit_vec(sys.field(), A.dim(), a[i]));
  Vec prod = AS.product(a.back(), b.front());
  Scalar pre = Scalar::one(sys.field());
  if (sullivan)
    pre = AS.integrate(prod);
  else
    f.push_back(sys.push(brane, prod));
  for (std::size_t i = 1; i + 1 < b.size(); ++i) f.push_back(unit_vec(sys.field(), A.dim(), b[i]));
  f.push_back(unit_vec(sys.field(), sys.algebra(lb.T)->dim(), b.back()));
  BarElement r = bar_zero(WindowLabel::make_open(la.S, lb.T), static_cast<int>(f.size()) - 2, sys.field());
  r.add(detail::tensor_tuple(sys, r.label, f), pre);
  return r;
}

/// Coproduct of the triangle on a basis tuple c ∈ B_N(T,U): Σ over the split middle factor.
inline std::vector<std::pair<BarElement, BarElement>> triangle_coproduct(const BraneSystem& sys, const WindowLabel& lc, const Tuple& c,
                                                                         const std::string& brane) {
  const FrobeniusAlgebra& AS = sys.brane(brane).algebra;
  const FrobeniusAlgebra& A = sys.closed();
  std::vector<std::pair<BarElement, BarElement>> out;
  BraneLabel S{brane};
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    Vec r = sys.restrict(brane, unit_vec(sys.field(), A.dim(), c[i]));
    for (std::size_t p = 0; p < AS.dim(); ++p)
      for (const auto& [q, g] : AS.inverse_metric_rows()[p]) {
        Vec left = AS.multiply(r, unit_vec(sys.field(), AS.dim(), p));
        if (is_zero(left)) continue;
        std::vector<Vec> fl, fr;
        fl.push_back(unit_vec(sys.field(), sys.algebra(lc.S)->dim(), c.front()));
        for (std::size_t j = 1; j < i; ++j) fl.push_back(unit_vec(sys.field(), A.dim(), c[j]));
        fl.push_back(left);
        fr.push_back(scale(g, unit_vec(sys.field(), AS.dim(), q)));
        for (std::size_t j = i + 1; j + 1 < c.size(); ++j) fr.push_back(unit_vec(sys.field(), A.dim(), c[j]));
        fr.push_back(unit_vec(sys.field(), sys.algebra(lc.T)->dim(), c.back()));
        out.emplace_back(detail::tensor_tuple(sys, WindowLabel::make_open(lc.S, S), fl),
                         detail::tensor_tuple(sys, WindowLabel::make_open(S, lc.T), fr));
      }
  }
  return out;
}

}  // namespace arcop
