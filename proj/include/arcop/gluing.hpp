#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arcop/tiles.hpp"

namespace arcop {

/// Modular grading: genus and 1 - χ with punctures counted as boundary.
struct GradingTag {
  int g = 0;
  int chi_minus_1 = 0;
  auto operator<=>(const GradingTag&) const = default;
};

inline GradingTag grading(const ArcGraph& g) { return {g.surface.genus, 1 - g.surface.chi_punctured()}; }

/// Window position in a multi-operand gluing: (operand, window).
using WindowRef = std::pair<int, int>;

struct GlueResult {
  ArcGraph graph;
  std::map<WindowRef, int> window_map;  // surviving windows of the operands -> new window id
  int closed_loops = 0;                 // composite leaves that closed up and were deleted
};

namespace detail {

struct EngineInput {
  std::vector<ArcGraph> graphs;                       // leaf level: every arc is one leaf
  std::vector<std::pair<WindowRef, WindowRef>> glue;  // window identifications
  std::set<std::pair<int, int>> deleted;              // (operand, leaf) removed before gluing
};

struct LeafEnd {
  int graph, leaf, end;
  auto operator<=>(const LeafEnd&) const = default;
};

/**
 * Glues leaf-level graphs along windows, deletes closed leaves, and
 * recomputes surface, arcs and regions. The result is leaf level.
 */
inline GlueResult glue_leaves(const EngineInput& in) {
  const int G = static_cast<int>(in.graphs.size());
  std::vector<Layout> layouts;
  for (const auto& g : in.graphs) layouts.push_back(compute_layout(g));

  std::map<WindowRef, WindowRef> glued;
  for (const auto& [a, b] : in.glue) {
    if (a == b || glued.count(a) || glued.count(b)) fail(ErrorKind::Malformed, "window glued twice");
    glued[a] = b;
    glued[b] = a;
  }
  for (const auto& [a, b] : in.glue) {
    if (layouts[a.first].windows[a.second].closed != layouts[b.first].windows[b.second].closed)
      fail(ErrorKind::KindMismatch, "cannot glue a closed window to an open one");
    if (layouts[a.first].ends_in[a.second] != layouts[b.first].ends_in[b.second])
      fail(ErrorKind::WeightMismatch, "window weights " + std::to_string(layouts[a.first].ends_in[a.second]) + " and " +
                                          std::to_string(layouts[b.first].ends_in[b.second]));
  }
  auto is_deleted = [&](int g, int leaf) { return in.deleted.count({g, leaf}) > 0; };

  // leaf ends at window slots
  auto end_at = [&](int g, int w, int k) {
    auto [a, e] = layouts[g].slot_owner[w][k];
    return LeafEnd{g, a, e};
  };
  auto where = [&](const LeafEnd& x) { return in.graphs[x.graph].arcs[x.leaf].end(x.end); };

  // composite leaves
  struct Segment {
    int graph, leaf;
    bool forward;
  };
  std::vector<std::vector<Segment>> composites;
  std::vector<std::pair<LeafEnd, LeafEnd>> composite_ends;
  std::set<std::pair<int, int>> used;
  for (int g = 0; g < G; ++g)
    for (std::size_t w = 0; w < layouts[g].windows.size(); ++w) {
      if (glued.count({g, static_cast<int>(w)})) continue;
      for (int k = 0; k < layouts[g].ends_in[w]; ++k) {
        LeafEnd s = end_at(g, static_cast<int>(w), k);
        if (is_deleted(s.graph, s.leaf) || used.count({s.graph, s.leaf})) continue;
        std::vector<Segment> segs;
        LeafEnd cur = s;
        while (true) {
          if (is_deleted(cur.graph, cur.leaf)) fail(ErrorKind::Malformed, "deleted leaf reached through a glued window");
          used.insert({cur.graph, cur.leaf});
          segs.push_back({cur.graph, cur.leaf, cur.end == 0});
          LeafEnd other{cur.graph, cur.leaf, 1 - cur.end};
          ArcEnd at = where(other);
          auto it = glued.find({other.graph, at.window});
          if (it == glued.end()) {
            composites.push_back(segs);
            composite_ends.emplace_back(s, other);
            break;
          }
          int m = layouts[other.graph].ends_in[at.window];
          cur = end_at(it->second.first, it->second.second, m - 1 - at.slot);
        }
      }
    }
  std::vector<std::pair<int, int>> loops;
  for (int g = 0; g < G; ++g)
    for (std::size_t a = 0; a < in.graphs[g].arcs.size(); ++a)
      if (!used.count({g, static_cast<int>(a)}) && !is_deleted(g, static_cast<int>(a))) loops.emplace_back(g, a);
  int closed_loops = 0;
  for (const auto& [g0, a0] : loops) {
    if (used.count({g0, a0})) continue;
    ++closed_loops;
    LeafEnd cur{g0, a0, 0};
    while (!used.count({cur.graph, cur.leaf})) {
      used.insert({cur.graph, cur.leaf});
      ArcEnd at = where(LeafEnd{cur.graph, cur.leaf, 1 - cur.end});
      const auto& [pg, pw] = glued.at({cur.graph, at.window});
      cur = end_at(pg, pw, layouts[cur.graph].ends_in[at.window] - 1 - at.slot);
    }
  }

  TileComplex X;
  for (int g = 0; g < G; ++g) X.add_graph(g, in.graphs[g], layouts[g]);
  std::vector<std::pair<int, int>> window_pairs;
  for (const auto& [a, b] : in.glue) {
    int m = layouts[a.first].ends_in[a.second];
    for (int k = 0; k <= m; ++k)
      window_pairs.emplace_back(X.boundary(a.first, a.second, k), X.boundary(b.first, b.second, m - k));
  }
  auto leaf_pair = [&](int g, int leaf) { return std::make_pair(X.side(g, leaf, Side::L), X.side(g, leaf, Side::R)); };

  std::vector<std::pair<int, int>> surface_pairs = window_pairs;
  for (int g = 0; g < G; ++g)
    for (std::size_t a = 0; a < in.graphs[g].arcs.size(); ++a) surface_pairs.push_back(leaf_pair(g, static_cast<int>(a)));
  std::vector<std::pair<int, int>> region_pairs = window_pairs;
  for (const auto& [g, a] : in.deleted) region_pairs.push_back(leaf_pair(g, a));
  for (const auto& [g, a] : loops) region_pairs.push_back(leaf_pair(g, a));

  Quotient QS = quotient(X, surface_pairs);
  Quotient QR = quotient(X, region_pairs);
  if (QS.component_chi.size() != 1) fail(ErrorKind::Malformed, "glued surface is not connected");
  if (QS.free_cycles.empty()) fail(ErrorKind::EmptyBoundary, "glued surface has no boundary");

  // marked-point classes
  std::map<int, BraneLabel> point_label;  // surface-level class root -> label union
  std::vector<int> point_uses;
  for (int e = 0; e < static_cast<int>(X.uses.size()); ++e) {
    const EdgeUse& u = X.uses[e];
    if (u.end_point < 0) continue;
    point_uses.push_back(e);
    const auto& lab = in.graphs[u.graph].surface.boundaries[u.end_point_boundary][u.end_point].label;
    point_label[QS.vertices.find(e)].insert(lab.begin(), lab.end());
  }

  // new boundaries, ordered by their smallest surviving (operand, window)
  struct NewBoundary {
    WindowRef key;
    std::vector<int> cycle;
  };
  std::vector<NewBoundary> nbs;
  for (const auto& cyc : QS.free_cycles) {
    NewBoundary nb{{G, 0}, {}};
    std::size_t start = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const EdgeUse& u = X.uses[cyc[i]];
      if (u.is_side) throw std::logic_error("arc side on a glued boundary");
      WindowRef r{u.graph, u.window};
      if (u.k == 0 && r < nb.key) {
        nb.key = r;
        start = i;
      }
    }
    nb.cycle.assign(cyc.begin() + start, cyc.end());
    nb.cycle.insert(nb.cycle.end(), cyc.begin(), cyc.begin() + start);
    nbs.push_back(nb);
  }
  std::sort(nbs.begin(), nbs.end(), [](const NewBoundary& a, const NewBoundary& b) { return a.key < b.key; });

  GlueResult out;
  out.closed_loops = closed_loops;
  ArcGraph& R = out.graph;
  std::set<int> boundary_points;  // surface classes that stay on the boundary
  std::map<LeafEnd, ArcEnd> new_position;
  int window_base = 0;
  for (const auto& nb : nbs) {
    std::vector<MarkedPoint> pts;
    int start_class = QS.vertices.find(nb.cycle.back());
    pts.push_back({point_label.at(start_class)});
    boundary_points.insert(start_class);
    int win = 0, slot = 0;
    for (std::size_t i = 0; i < nb.cycle.size(); ++i) {
      const EdgeUse& u = X.uses[nb.cycle[i]];
      if (u.k == 0) out.window_map[{u.graph, u.window}] = window_base + win;
      if (u.end_point >= 0) {
        int cls = QS.vertices.find(nb.cycle[i]);
        if (i + 1 < nb.cycle.size()) {
          pts.push_back({point_label.at(cls)});
          boundary_points.insert(cls);
        }
        ++win;
        slot = 0;
      } else {
        LeafEnd le = end_at(u.graph, u.end_window, u.end_slot);
        if (!is_deleted(le.graph, le.leaf)) new_position[le] = ArcEnd{window_base + win, slot++};
      }
    }
    window_base += win;
    R.surface.boundaries.push_back(pts);
  }
  for (auto it = out.window_map.begin(); it != out.window_map.end();)
    it = glued.count(it->first) ? out.window_map.erase(it) : std::next(it);

  // punctures: old ones (renamed on collision) then interior labelled points
  std::set<std::string> ids;
  std::map<std::pair<int, std::string>, std::string> rename;
  for (int g = 0; g < G; ++g)
    for (const auto& p : in.graphs[g].surface.punctures) {
      std::string id = p.id;
      for (int n = 2; ids.count(id); ++n) id = p.id + "_" + std::to_string(n);
      ids.insert(id);
      rename[{g, p.id}] = id;
      R.surface.punctures.push_back({id, p.label});
    }
  std::map<int, std::string> new_puncture_of_tile_root;
  std::map<int, std::vector<std::string>> new_punctures_in;  // region component root -> ids
  std::set<int> interior_done;
  int counter = 1;
  for (int e : point_uses) {
    int cls = QS.vertices.find(e);
    if (boundary_points.count(cls) || !interior_done.insert(cls).second) continue;
    const BraneLabel& lab = point_label.at(cls);
    if (lab.empty()) continue;  // closed gluing: the point is forgotten
    std::string id;
    do id = "q" + std::to_string(counter++);
    while (ids.count(id));
    ids.insert(id);
    R.surface.punctures.push_back({id, lab});
    new_punctures_in[QR.tiles.find(X.uses[e].tile)].push_back(id);
  }

  // arcs
  std::vector<std::vector<Segment>> arc_segments;
  for (std::size_t c = 0; c < composites.size(); ++c) {
    R.arcs.push_back(Arc{new_position.at(composite_ends[c].first), new_position.at(composite_ends[c].second), 1});
    arc_segments.push_back(composites[c]);
  }

  // genus from the surface-level quotient
  int chiF = QS.component_chi.begin()->second;
  int b = static_cast<int>(R.surface.boundaries.size());
  if ((2 - chiF - b) % 2 != 0 || 2 - chiF - b < 0) throw std::logic_error("glued surface has invalid Euler data");
  R.surface.genus = (2 - chiF - b) / 2;

  // regions: trace new cycles and group them by region-level component
  Layout NL = compute_layout(R);
  std::map<int, int> region_of_component;
  std::map<int, int> cycles_in_component;
  std::vector<int> cycle_component;
  for (const auto& c : NL.cycles) {
    int use;
    const CycleItem* side = nullptr;
    for (const auto& x : c)
      if (!x.is_piece) {
        side = &x;
        break;
      }
    if (side) {
      const Segment& s = arc_segments[side->arc].front();
      Side old = (side->side == Side::L) == s.forward ? Side::L : Side::R;
      use = X.side(s.graph, s.leaf, old);
    } else {
      // arcless new boundary: any old window piece on it
      const Piece& p = NL.pieces[c[0].piece];
      int bnd = p.boundary;
      use = nbs[bnd].cycle.front();
    }
    int comp = QR.tiles.find(X.uses[use].tile);
    cycle_component.push_back(comp);
    ++cycles_in_component[comp];
  }
  for (std::size_t i = 0; i < NL.cycles.size(); ++i) {
    int comp = cycle_component[i];
    auto [it, ins] = region_of_component.emplace(comp, static_cast<int>(R.regions.size()));
    if (ins) {
      Region reg;
      int chi = QR.component_chi.at(comp);
      int h2 = 2 - chi - cycles_in_component[comp];
      if (h2 % 2 != 0 || h2 < 0) throw std::logic_error("glued region has invalid Euler data");
      reg.genus = h2 / 2;
      R.regions.push_back(reg);
    }
    R.regions[it->second].cycles.push_back(NL.cycles[i]);
  }
  for (std::size_t t = 0; t < X.tile_chi.size(); ++t) {
    int comp = QR.tiles.find(static_cast<int>(t));
    auto [g, r] = X.tile_region[t];
    auto it = region_of_component.find(comp);
    if (it == region_of_component.end()) fail(ErrorKind::EmptyBoundary, "a glued region has no boundary");
    for (const auto& id : in.graphs[g].regions[r].punctures) R.regions[it->second].punctures.push_back(rename.at({g, id}));
  }
  for (const auto& [comp, ids_in] : new_punctures_in)
    for (const auto& id : ids_in) R.regions[region_of_component.at(comp)].punctures.push_back(id);
  for (auto& reg : R.regions) std::sort(reg.punctures.begin(), reg.punctures.end());

  validate(R, {.allow_parallel = true, .built = true});
  return out;
}

}  // namespace detail

/// Merges parallel leaves into weighted arcs.
inline ArcGraph collapse_bands(const ArcGraph& leaves) {
  Layout L = compute_layout(leaves);
  const int n = static_cast<int>(leaves.arcs.size());
  detail::UnionFind uf(n);
  std::vector<bool> rectangle(leaves.regions.size(), false);
  // adjacency: for leaf a, the leaf across its R side inside a rectangle (with the side used there)
  std::vector<std::pair<int, Side>> across_R(n, {-1, Side::L}), across_L(n, {-1, Side::L});
  for (std::size_t r = 0; r < leaves.regions.size(); ++r) {
    const Region& R = leaves.regions[r];
    if (R.genus != 0 || R.cycles.size() != 1 || !R.punctures.empty() || R.cycles[0].size() != 4) continue;
    const Cycle& c = R.cycles[0];
    int off = c[0].is_piece ? 0 : 1;
    const CycleItem &p0 = c[off], &s0 = c[off + 1], &p1 = c[(off + 2) % 4], &s1 = c[(off + 3) % 4];
    if (L.pieces[p0.piece].type != 1 || L.pieces[p1.piece].type != 1 || s0.arc == s1.arc) continue;
    rectangle[r] = true;
    uf.unite(s0.arc, s1.arc);
    (s0.side == Side::R ? across_R : across_L)[s0.arc] = {s1.arc, s1.side};
    (s1.side == Side::R ? across_R : across_L)[s1.arc] = {s0.arc, s0.side};
  }
  // orient each band from its first leaf, walking across rectangles
  std::vector<int> flip(n, -1);
  std::vector<std::vector<int>> bands;
  std::vector<int> band_of(n, -1);
  std::map<int, std::vector<int>> groups;
  for (int a = 0; a < n; ++a) groups[uf.find(a)].push_back(a);
  for (const auto& [root, members] : groups) {
    // start from a leaf with at most one rectangle neighbour
    int start = -1;
    for (int x : members)
      if (across_L[x].first == -1 || across_R[x].first == -1) {
        start = x;
        break;
      }
    if (start < 0) throw std::logic_error("band closes up");
    // effective orientation: flipped leaves swap L and R; the walk goes across effective R sides
    bool f = across_R[start].first == -1 && across_L[start].first != -1;
    std::vector<int> order;
    int x = start, prev = -1;
    bool fx = f;
    while (true) {
      order.push_back(x);
      flip[x] = fx ? 1 : 0;
      auto nb = fx ? across_L[x] : across_R[x];
      if (nb.first == -1 || nb.first == prev) break;
      prev = x;
      x = nb.first;
      fx = nb.second == Side::R;  // the side facing the previous leaf becomes effective L
      if (flip[x] != -1) throw std::logic_error("band closes up");
    }
    if (order.size() != members.size()) throw std::logic_error("band is not a chain");
    bands.push_back(order);
  }
  // band ends: leaf 0's oriented end1 / end2
  auto oriented = [&](int leaf) {
    Arc a = leaves.arcs[leaf];
    if (flip[leaf]) std::swap(a.end1, a.end2);
    return a;
  };
  // canonical band orientation: end1 block before end2 block
  for (auto& band : bands) {
    Arc f = oriented(band.front());
    if (f.end2 < f.end1) {
      for (int leaf : band) flip[leaf] ^= 1;
      std::reverse(band.begin(), band.end());
    }
  }
  std::sort(bands.begin(), bands.end(), [&](const auto& x, const auto& y) { return oriented(x.front()).end1 < oriented(y.front()).end1; });
  for (std::size_t b = 0; b < bands.size(); ++b)
    for (int leaf : bands[b]) band_of[leaf] = static_cast<int>(b);

  ArcGraph out;
  out.surface = leaves.surface;
  out.io = leaves.io;
  out.arcs.resize(bands.size());
  for (std::size_t w = 0; w < L.windows.size(); ++w) {
    int slot = 0;
    std::set<std::pair<int, int>> placed;
    for (int k = 0; k < L.ends_in[w]; ++k) {
      auto [leaf, e] = L.slot_owner[w][k];
      int b = band_of[leaf];
      int oe = flip[leaf] ? 1 - e : e;
      if (!placed.insert({b, oe}).second) continue;
      (oe == 0 ? out.arcs[b].end1 : out.arcs[b].end2) = ArcEnd{static_cast<int>(w), slot++};
    }
  }
  for (std::size_t b = 0; b < bands.size(); ++b) out.arcs[b].weight = static_cast<int>(bands[b].size());

  // map leaf-level regions onto the band graph
  std::map<std::pair<int, Side>, int> side_region;
  std::map<int, int> boundary_region;
  for (std::size_t r = 0; r < leaves.regions.size(); ++r) {
    if (rectangle[r]) continue;
    for (const auto& c : leaves.regions[r].cycles)
      for (const auto& x : c) {
        if (!x.is_piece) side_region[{x.arc, x.side}] = static_cast<int>(r);
        else if (c.size() == 1) boundary_region[L.pieces[x.piece].boundary] = static_cast<int>(r);
      }
  }
  Layout NL = compute_layout(out);
  std::map<int, int> new_index;
  for (const auto& c : NL.cycles) {
    int old;
    const CycleItem& x = c.size() > 1 ? c[1] : c[0];
    if (x.is_piece) {
      old = boundary_region.at(NL.pieces[x.piece].boundary);
    } else {
      const auto& band = bands[x.arc];
      int leaf = x.side == Side::L ? band.front() : band.back();
      Side s = flip[leaf] ? (x.side == Side::L ? Side::R : Side::L) : x.side;
      old = side_region.at({leaf, s});
    }
    auto [it, ins] = new_index.emplace(old, static_cast<int>(out.regions.size()));
    if (ins) out.regions.push_back(Region{leaves.regions[old].genus, leaves.regions[old].punctures, {}});
    out.regions[it->second].cycles.push_back(c);
  }
  return out;
}

namespace detail {

inline GlueResult finish(GlueResult r) {
  r.graph = collapse_bands(r.graph);
  validate(r.graph, {.built = true});
  return r;
}

inline IoPartition map_io(const std::vector<std::optional<IoPartition>>& ios, const std::map<WindowRef, int>& wm) {
  IoPartition p;
  for (std::size_t g = 0; g < ios.size(); ++g) {
    if (!ios[g]) continue;
    for (int w : ios[g]->in)
      if (auto it = wm.find({static_cast<int>(g), w}); it != wm.end()) p.in.push_back(it->second);
    for (int w : ios[g]->out)
      if (auto it = wm.find({static_cast<int>(g), w}); it != wm.end()) p.out.push_back(it->second);
  }
  std::sort(p.in.begin(), p.in.end());
  std::sort(p.out.begin(), p.out.end());
  return p;
}

inline void check_window(const ArcGraph& g, int w) {
  if (w < 0 || w >= static_cast<int>(windows_of(g.surface).size()))
    fail(ErrorKind::IndexOutOfRange, "no window " + std::to_string(w + 1));
  if (window_weight(g, graph_weights(g), w) == 0) fail(ErrorKind::InactiveWindow, "window " + std::to_string(w + 1) + " is inactive");
}

}  // namespace detail

/// Non-self gluing of window wa of a to window wb of b (weights taken from the graphs).
inline GlueResult glue(const ArcGraph& a, int wa, const ArcGraph& b, int wb) {
  detail::check_window(a, wa);
  detail::check_window(b, wb);
  detail::EngineInput in;
  in.graphs = {discrete_representative(a).leaves, discrete_representative(b).leaves};
  in.glue = {{{0, wa}, {1, wb}}};
  auto r = detail::finish(detail::glue_leaves(in));
  if (a.io || b.io) r.graph.io = detail::map_io({a.io, b.io}, r.window_map);
  return r;
}

inline GlueResult self_glue(const ArcGraph& g, int w1, int w2) {
  detail::check_window(g, w1);
  detail::check_window(g, w2);
  if (w1 == w2) fail(ErrorKind::Malformed, "self-gluing needs two distinct windows");
  detail::EngineInput in;
  in.graphs = {discrete_representative(g).leaves};
  in.glue = {{{0, w1}, {0, w2}}};
  auto r = detail::finish(detail::glue_leaves(in));
  if (g.io) r.graph.io = detail::map_io({g.io}, r.window_map);
  return r;
}

}  // namespace arcop
