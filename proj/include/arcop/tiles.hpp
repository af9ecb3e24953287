#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "arcop/surface.hpp"

namespace arcop::detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// One directed use of an edge on the boundary of a region tile.
struct EdgeUse {
  int graph = 0;
  int tile = 0;
  bool is_side = false;
  int window = -1, k = -1;    // window piece
  int leaf = -1;              // arc side
  Side side = Side::L;
  // vertex at the end of this use
  int end_point_boundary = -1, end_point = -1;  // marked point, if any
  int end_window = -1, end_slot = -1;           // arc end, if any
};

/**
 * Disjoint union of the complementary regions of one or more leaf-level
 * graphs, cut open along every leaf.
 */
struct TileComplex {
  std::vector<EdgeUse> uses;
  std::vector<int> succ, pred;
  std::vector<int> tile_chi;
  std::vector<std::pair<int, int>> tile_region;  // (graph, region)
  std::map<std::tuple<int, int, int>, int> boundary_use;        // (graph, window, k)
  std::map<std::tuple<int, int, int>, int> side_use;            // (graph, leaf, side)

  void add_graph(int gi, const ArcGraph& g, const Layout& L) {
    for (std::size_t r = 0; r < g.regions.size(); ++r) {
      int tile = static_cast<int>(tile_chi.size());
      tile_chi.push_back(g.regions[r].chi());
      tile_region.emplace_back(gi, static_cast<int>(r));
      for (const auto& c : g.regions[r].cycles) {
        int first = static_cast<int>(uses.size());
        for (const auto& x : c) {
          if (x.is_piece) {
            for (auto [w, k] : L.pieces[x.piece].segments) {
              EdgeUse e;
              e.graph = gi;
              e.tile = tile;
              e.window = w;
              e.k = k;
              if (k < L.ends_in[w]) {
                e.end_window = w;
                e.end_slot = k;
              } else {
                e.end_point_boundary = L.windows[w].boundary;
                e.end_point = L.windows[w].end_point;
              }
              boundary_use[{gi, w, k}] = static_cast<int>(uses.size());
              uses.push_back(e);
            }
          } else {
            EdgeUse e;
            e.graph = gi;
            e.tile = tile;
            e.is_side = true;
            e.leaf = x.arc;
            e.side = x.side;
            const ArcEnd& to = x.side == Side::L ? g.arcs[x.arc].end2 : g.arcs[x.arc].end1;
            e.end_window = to.window;
            e.end_slot = to.slot;
            side_use[{gi, x.arc, x.side == Side::L ? 0 : 1}] = static_cast<int>(uses.size());
            uses.push_back(e);
          }
        }
        int last = static_cast<int>(uses.size());
        for (int i = first; i < last; ++i) {
          succ.push_back(i + 1 < last ? i + 1 : first);
          pred.push_back(i > first ? i - 1 : last - 1);
        }
      }
    }
  }

  int boundary(int g, int w, int k) const { return boundary_use.at({g, w, k}); }
  int side(int g, int leaf, Side s) const { return side_use.at({g, leaf, s == Side::L ? 0 : 1}); }
};

/// Quotient of a tile complex by orientation-reversing edge identifications.
struct Quotient {
  std::vector<int> partner;   // -1 when free
  UnionFind vertices;         // over vertex occurrences (= uses, vertex at the use's end)
  UnionFind tiles;
  std::vector<std::vector<int>> free_cycles;
  std::map<int, int> component_chi;  // tile-component root -> χ

  int next_free(const TileComplex& X, int e) const {
    int f = X.succ[e];
    while (partner[f] != -1) f = X.succ[partner[f]];
    return f;
  }
};

inline Quotient quotient(const TileComplex& X, const std::vector<std::pair<int, int>>& pairs) {
  Quotient Q;
  const int n = static_cast<int>(X.uses.size());
  Q.partner.assign(n, -1);
  Q.vertices = UnionFind(n);
  Q.tiles = UnionFind(X.tile_chi.size());
  for (auto [a, b] : pairs) {
    if (Q.partner[a] != -1 || Q.partner[b] != -1 || a == b) throw std::logic_error("edge glued twice");
    Q.partner[a] = b;
    Q.partner[b] = a;
    // start(a) ~ end(b), end(a) ~ start(b); start(x) is the vertex at the end of pred(x)
    Q.vertices.unite(X.pred[a], b);
    Q.vertices.unite(a, X.pred[b]);
    Q.tiles.unite(X.uses[a].tile, X.uses[b].tile);
  }
  std::vector<bool> seen(n, false);
  for (int e = 0; e < n; ++e) {
    if (Q.partner[e] != -1 || seen[e]) continue;
    std::vector<int> cyc;
    int f = e;
    do {
      seen[f] = true;
      cyc.push_back(f);
      f = Q.next_free(X, f);
    } while (f != e);
    Q.free_cycles.push_back(cyc);
  }
  std::map<int, long> chi, uses_in, classes_in, pairs_in;
  for (std::size_t t = 0; t < X.tile_chi.size(); ++t) chi[Q.tiles.find(t)] += X.tile_chi[t];
  std::set<int> roots;
  for (int e = 0; e < n; ++e) {
    int c = Q.tiles.find(X.uses[e].tile);
    ++uses_in[c];
    if (Q.partner[e] > e) ++pairs_in[c];
    if (roots.insert(Q.vertices.find(e)).second) ++classes_in[c];
  }
  for (auto& [c, x] : chi) Q.component_chi[c] = static_cast<int>(x + pairs_in[c] - uses_in[c] + classes_in[c]);
  return Q;
}

}  // namespace arcop::detail
