#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "arcop/surface.hpp"

namespace arcop {

namespace detail {

inline std::string label_key(const BraneLabel& l) { return format_label(l); }

// Key of g after relabelling boundaries by `order` and rotating boundary b to start at point rot[b].
inline std::string relabelled_key(const ArcGraph& g, const Layout& L, const std::vector<int>& order, const std::vector<int>& rot) {
  const auto& bs = g.surface.boundaries;
  // window id map
  std::vector<int> new_window(L.windows.size());
  std::vector<int> base(bs.size());
  int acc = 0;
  for (int b : order) {
    base[b] = acc;
    acc += static_cast<int>(bs[b].size());
  }
  for (std::size_t w = 0; w < L.windows.size(); ++w) {
    int b = L.windows[w].boundary, n = static_cast<int>(bs[b].size());
    new_window[w] = base[b] + ((L.windows[w].start_point - rot[b]) % n + n) % n;
  }
  std::string key = "g" + std::to_string(g.surface.genus) + "|";
  for (int b : order) {
    int n = static_cast<int>(bs[b].size());
    key += "(";
    for (int j = 0; j < n; ++j) key += label_key(bs[b][(j + rot[b]) % n].label);
    key += ")";
  }
  std::vector<std::string> pl;
  for (const auto& p : g.surface.punctures) pl.push_back(label_key(p.label));
  std::sort(pl.begin(), pl.end());
  key += "|P";
  for (const auto& s : pl) key += s;

  // arcs oriented and sorted by their first end
  struct A {
    ArcEnd e1, e2;
    int weight;
    int old;
    bool flipped;
  };
  std::vector<A> arcs;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    ArcEnd x{new_window[g.arcs[a].end1.window], g.arcs[a].end1.slot};
    ArcEnd y{new_window[g.arcs[a].end2.window], g.arcs[a].end2.slot};
    bool f = y < x;
    arcs.push_back({f ? y : x, f ? x : y, g.arcs[a].weight, static_cast<int>(a), f});
  }
  std::sort(arcs.begin(), arcs.end(), [](const A& p, const A& q) { return p.e1 < q.e1; });
  std::vector<int> new_arc(g.arcs.size());
  std::vector<bool> flipped(g.arcs.size());
  key += "|A";
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    new_arc[arcs[i].old] = static_cast<int>(i);
    flipped[arcs[i].old] = arcs[i].flipped;
    key += "[" + std::to_string(arcs[i].e1.window) + "," + std::to_string(arcs[i].e1.slot) + "," +
           std::to_string(arcs[i].e2.window) + "," + std::to_string(arcs[i].e2.slot) + "," + std::to_string(arcs[i].weight) + "]";
  }
  // regions: cycles described by their arc sides (new numbering) or arcless boundary
  std::vector<int> new_boundary_pos(bs.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_boundary_pos[order[i]] = static_cast<int>(i);
  std::vector<std::string> regions;
  for (const auto& R : g.regions) {
    std::vector<std::string> cycles;
    for (const auto& c : R.cycles) {
      std::vector<std::pair<int, int>> sides;
      int arcless = -1;
      for (const auto& x : c) {
        if (x.is_piece) {
          if (c.size() == 1) arcless = new_boundary_pos[L.pieces[x.piece].boundary];
          continue;
        }
        bool s = (x.side == Side::R) != flipped[x.arc];
        sides.emplace_back(new_arc[x.arc], s ? 1 : 0);
      }
      std::string ck;
      if (arcless >= 0) {
        ck = "b" + std::to_string(arcless);
      } else {
        // cyclic sequence: rotate to its minimum
        auto it = std::min_element(sides.begin(), sides.end());
        std::rotate(sides.begin(), it, sides.end());
        for (auto [a, s] : sides) ck += std::to_string(a) + (s ? "R" : "L") + ".";
      }
      cycles.push_back(ck);
    }
    std::sort(cycles.begin(), cycles.end());
    std::vector<std::string> pls;
    for (const auto& id : R.punctures)
      for (const auto& p : g.surface.punctures)
        if (p.id == id) pls.push_back(label_key(p.label));
    std::sort(pls.begin(), pls.end());
    std::string rk = "{" + std::to_string(R.genus) + ":";
    for (const auto& s : pls) rk += s;
    for (const auto& s : cycles) rk += "<" + s + ">";
    regions.push_back(rk + "}");
  }
  std::sort(regions.begin(), regions.end());
  key += "|R";
  for (const auto& s : regions) key += s;
  if (g.io) {
    std::vector<int> in, out;
    for (int w : g.io->in) in.push_back(new_window[w]);
    for (int w : g.io->out) out.push_back(new_window[w]);
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    key += "|I";
    for (int w : in) key += std::to_string(w) + ",";
    key += "O";
    for (int w : out) key += std::to_string(w) + ",";
  }
  return key;
}

}  // namespace detail

/**
 * Canonical form by brute force over boundary orderings and rotations.
 * Puncture ids are ignored; their labels are kept.
 */
inline std::string canonical_form(const ArcGraph& g) {
  Layout L = compute_layout(g);
  const int B = static_cast<int>(g.surface.boundaries.size());
  std::vector<int> order(B);
  std::iota(order.begin(), order.end(), 0);
  std::string best;
  bool have = false;
  do {
    std::vector<int> rot(B, 0);
    while (true) {
      std::string k = detail::relabelled_key(g, L, order, rot);
      if (!have || k < best) {
        best = k;
        have = true;
      }
      int b = 0;
      for (; b < B; ++b) {
        if (++rot[b] < static_cast<int>(g.surface.boundaries[b].size())) break;
        rot[b] = 0;
      }
      if (b == B) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Form that keeps window numbering; equal exactly when the graphs differ only by arc and region order.
inline std::string labelled_form(const ArcGraph& g) {
  const int B = static_cast<int>(g.surface.boundaries.size());
  std::vector<int> order(B);
  std::iota(order.begin(), order.end(), 0);
  return detail::relabelled_key(g, compute_layout(g), order, std::vector<int>(B, 0));
}

/// Labelled form after renumbering window w as perm[w]; the renumbering must come from reordering and rotating boundaries.
inline std::string labelled_form(const ArcGraph& g, const std::vector<int>& perm) {
  Layout L = compute_layout(g);
  const auto& bs = g.surface.boundaries;
  const int B = static_cast<int>(bs.size());
  if (perm.size() != L.windows.size()) fail(ErrorKind::Malformed, "window renumbering has the wrong size");
  // boundary order by smallest new window, rotation from the window at point 0
  std::vector<int> order(B), rot(B, 0), first(B, -1);
  for (std::size_t w = 0; w < L.windows.size(); ++w) {
    int b = L.windows[w].boundary;
    if (first[b] < 0 || perm[w] < perm[first[b]]) first[b] = static_cast<int>(w);
  }
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return perm[first[x]] < perm[first[y]]; });
  for (int b = 0; b < B; ++b) rot[b] = L.windows[first[b]].start_point;
  std::vector<int> base(B);
  int acc = 0;
  for (int b : order) {
    base[b] = acc;
    acc += static_cast<int>(bs[b].size());
  }
  for (std::size_t w = 0; w < L.windows.size(); ++w) {
    int b = L.windows[w].boundary, n = static_cast<int>(bs[b].size());
    if (perm[w] != base[b] + ((L.windows[w].start_point - rot[b]) % n + n) % n)
      fail(ErrorKind::Malformed, "window renumbering does not come from the boundaries");
  }
  return detail::relabelled_key(g, L, order, rot);
}

inline bool isomorphic(const ArcGraph& a, const ArcGraph& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace arcop
