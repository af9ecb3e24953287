#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcop/bar.hpp"

namespace arcop {

struct MarkedPoint {
  BraneLabel label;
  auto operator<=>(const MarkedPoint&) const = default;
};

struct Puncture {
  std::string id;
  BraneLabel label;
  auto operator<=>(const Puncture&) const = default;
};

struct WindowedSurface {
  int genus = 0;
  std::vector<std::vector<MarkedPoint>> boundaries;
  std::vector<Puncture> punctures;
  auto operator<=>(const WindowedSurface&) const = default;

  /// χ ignoring punctures.
  int chi() const { return 2 - 2 * genus - static_cast<int>(boundaries.size()); }
  /// χ counting punctures as boundary components.
  int chi_punctured() const { return chi() - static_cast<int>(punctures.size()); }
};

struct Window {
  int boundary = 0;
  int start_point = 0;  // index on the boundary; the window ends at start_point + 1 (cyclically)
  int end_point = 0;
  bool closed = false;
  WindowLabel label;
};

inline std::vector<Window> windows_of(const WindowedSurface& s) {
  std::vector<Window> out;
  for (int b = 0; b < static_cast<int>(s.boundaries.size()); ++b) {
    const auto& pts = s.boundaries[b];
    int n = static_cast<int>(pts.size());
    for (int j = 0; j < n; ++j) {
      Window w;
      w.boundary = b;
      w.start_point = j;
      w.end_point = (j + 1) % n;
      w.closed = n == 1 && pts[0].label.empty();
      w.label = w.closed ? WindowLabel::make_closed() : WindowLabel::make_open(pts[j].label, pts[w.end_point].label);
      out.push_back(w);
    }
  }
  return out;
}

inline void validate_surface(const WindowedSurface& s) {
  if (s.genus < 0) fail(ErrorKind::Malformed, "negative genus");
  for (std::size_t b = 0; b < s.boundaries.size(); ++b) {
    const auto& pts = s.boundaries[b];
    if (pts.empty()) fail(ErrorKind::EmptyBoundary, "boundary " + std::to_string(b) + " has no marked point");
    if (pts.size() > 1)
      for (const auto& p : pts)
        if (p.label.empty())
          fail(ErrorKind::Malformed, "empty-labelled point is not the unique point of boundary " + std::to_string(b));
  }
  std::set<std::string> ids;
  for (const auto& p : s.punctures)
    if (!ids.insert(p.id).second) fail(ErrorKind::Malformed, "duplicate puncture id '" + p.id + "'");
}

struct ArcEnd {
  int window = 0;
  int slot = 0;
  auto operator<=>(const ArcEnd&) const = default;
};

struct Arc {
  ArcEnd end1, end2;
  int weight = 1;
  auto operator<=>(const Arc&) const = default;
  const ArcEnd& end(int e) const { return e == 0 ? end1 : end2; }
};

enum class Side { L, R };

/// Item of a region boundary cycle: an arc side or a boundary piece.
struct CycleItem {
  bool is_piece = false;
  int arc = -1;
  Side side = Side::L;
  int piece = -1;

  static CycleItem of_piece(int p) { return {true, -1, Side::L, p}; }
  static CycleItem of_side(int a, Side s) { return {false, a, s, -1}; }
  auto operator<=>(const CycleItem&) const = default;
};

using Cycle = std::vector<CycleItem>;

struct Region {
  int genus = 0;
  std::vector<std::string> punctures;
  std::vector<Cycle> cycles;
  auto operator<=>(const Region&) const = default;

  int chi() const { return 2 - 2 * genus - static_cast<int>(cycles.size()); }
};

struct IoPartition {
  std::vector<int> in, out;  // 0-based window ids
  auto operator<=>(const IoPartition&) const = default;
};

struct ArcGraph {
  WindowedSurface surface;
  std::vector<Arc> arcs;
  std::vector<Region> regions;
  std::optional<IoPartition> io;
  auto operator<=>(const ArcGraph&) const = default;
};

/// Global record of Euler identity checks over the whole process.
struct EulerStats {
  std::atomic<long> checks{0};
  std::atomic<long> failures{0};
  std::atomic<long> disconnected{0};  // rejected cut data, not an identity failure
  // the same counts restricted to graphs the library built itself
  std::atomic<long> built_checks{0};
  std::atomic<long> built_failures{0};
};

inline EulerStats& euler_stats() {
  static EulerStats s;
  return s;
}

/// Maximal boundary stretch between consecutive arc ends.
struct Piece {
  int id = 0;
  int boundary = 0;
  std::vector<std::pair<int, int>> segments;  // (window, window-piece index)
  std::vector<int> points;                    // boundary point indices crossed, in order
  std::optional<ArcEnd> start, end;           // arc ends bounding the piece
  int type = 1;                               // 1: no point, 2: ∅ point, 3: labelled point, 4: several points
};

/// Derived combinatorics of an arc graph: windows, slots, pieces, traced cycles.
struct Layout {
  std::vector<Window> windows;
  std::vector<int> ends_in;                                // number of arc ends per window
  std::vector<std::vector<std::pair<int, int>>> slot_owner;  // [window][slot] -> (arc, 0|1)
  std::vector<Piece> pieces;
  std::map<ArcEnd, int> piece_ending_at, piece_starting_at;
  std::vector<int> arcless_piece;  // per boundary, piece id or -1
  std::vector<Cycle> cycles;       // traced, each rotated to start at its smallest piece

  int window_of(int boundary, int start_point) const {
    for (int w = 0; w < static_cast<int>(windows.size()); ++w)
      if (windows[w].boundary == boundary && windows[w].start_point == start_point) return w;
    return -1;
  }
};

inline Layout compute_layout(const ArcGraph& g) {
  Layout L;
  L.windows = windows_of(g.surface);
  const int W = static_cast<int>(L.windows.size());
  L.ends_in.assign(W, 0);
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    for (int e = 0; e < 2; ++e) {
      const ArcEnd& x = g.arcs[a].end(e);
      if (x.window < 0 || x.window >= W)
        fail(ErrorKind::Malformed, "arc " + std::to_string(a) + " ends in unknown window " + std::to_string(x.window + 1));
      ++L.ends_in[x.window];
    }
  L.slot_owner.resize(W);
  for (int w = 0; w < W; ++w) L.slot_owner[w].assign(L.ends_in[w], {-1, -1});
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    if (g.arcs[a].weight < 1) fail(ErrorKind::Malformed, "arc " + std::to_string(a) + " has non-positive weight");
    for (int e = 0; e < 2; ++e) {
      const ArcEnd& x = g.arcs[a].end(e);
      if (x.slot < 0 || x.slot >= L.ends_in[x.window] || L.slot_owner[x.window][x.slot].first != -1)
        fail(ErrorKind::Malformed, "slots of window " + std::to_string(x.window + 1) + " are not 0..m-1 used once");
      L.slot_owner[x.window][x.slot] = {static_cast<int>(a), e};
    }
  }

  // global arc-end numbering: window-major, slot-minor
  std::map<ArcEnd, int> end_number;
  int E = 0;
  for (int w = 0; w < W; ++w)
    for (int k = 0; k < L.ends_in[w]; ++k) end_number[{w, k}] = E++;
  L.pieces.resize(E);
  L.arcless_piece.assign(g.surface.boundaries.size(), -1);

  auto next_window = [&](int w) {
    const Window& x = L.windows[w];
    return L.window_of(x.boundary, x.end_point);
  };
  auto point_type = [&](int b, int p) { return g.surface.boundaries[b][p].label.empty() ? 2 : 3; };

  int extra = E;
  for (int b = 0; b < static_cast<int>(g.surface.boundaries.size()); ++b) {
    int first = L.window_of(b, 0);
    // collect windows of the boundary in order
    std::vector<int> ws;
    for (int w = first;;) {
      ws.push_back(w);
      w = next_window(w);
      if (w == first) break;
    }
    bool any = false;
    for (int w : ws) any = any || L.ends_in[w] > 0;
    if (!any) {
      Piece p;
      p.id = extra++;
      p.boundary = b;
      for (int w : ws) {
        p.segments.push_back({w, 0});
        p.points.push_back(L.windows[w].end_point);
      }
      p.type = p.points.size() == 1 ? point_type(b, p.points[0]) : 4;
      L.arcless_piece[b] = p.id;
      L.pieces.push_back(p);
      continue;
    }
    // pieces start right after each arc end
    for (int w : ws)
      for (int k = 0; k < L.ends_in[w]; ++k) {
        Piece p;
        p.boundary = b;
        p.start = ArcEnd{w, k};
        int cw = w, ck = k + 1;
        while (true) {
          p.segments.push_back({cw, ck});
          if (ck < L.ends_in[cw]) {
            p.end = ArcEnd{cw, ck};
            break;
          }
          p.points.push_back(L.windows[cw].end_point);
          cw = next_window(cw);
          ck = 0;
          if (L.ends_in[cw] > 0) {
            p.segments.push_back({cw, 0});
            p.end = ArcEnd{cw, 0};
            break;
          }
        }
        p.id = end_number[*p.end];
        if (p.points.empty()) p.type = 1;
        else if (p.points.size() == 1) p.type = point_type(b, p.points[0]);
        else p.type = 4;
        L.piece_ending_at[*p.end] = p.id;
        L.piece_starting_at[*p.start] = p.id;
        L.pieces[p.id] = p;
      }
  }

  // trace cycles
  std::vector<bool> seen(L.pieces.size(), false);
  for (int start = 0; start < static_cast<int>(L.pieces.size()); ++start) {
    if (seen[start]) continue;
    Cycle c;
    int p = start;
    do {
      seen[p] = true;
      c.push_back(CycleItem::of_piece(p));
      const Piece& pc = L.pieces[p];
      if (!pc.end) break;
      auto [a, e] = L.slot_owner[pc.end->window][pc.end->slot];
      c.push_back(CycleItem::of_side(a, e == 0 ? Side::L : Side::R));
      const ArcEnd& other = g.arcs[a].end(1 - e);
      p = L.piece_starting_at.at(other);
    } while (p != start);
    L.cycles.push_back(c);
  }
  return L;
}

inline Cycle canonical_rotation(const Cycle& c) {
  if (c.empty()) return c;
  auto it = std::min_element(c.begin(), c.end());
  Cycle r(it, c.end());
  r.insert(r.end(), c.begin(), it);
  return r;
}

inline int window_weight(const ArcGraph& g, const std::vector<int>& weighting, int w) {
  int s = 0;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    if (g.arcs[a].end1.window == w) s += weighting[a];
    if (g.arcs[a].end2.window == w) s += weighting[a];
  }
  return s;
}

inline std::vector<int> graph_weights(const ArcGraph& g) {
  std::vector<int> w;
  for (const auto& a : g.arcs) w.push_back(a.weight);
  return w;
}

struct ValidateOptions {
  bool allow_parallel = false;  // leaf-level graphs contain parallel leaves by design
  bool allow_inessential = false;  // duality cores carry arcs that cut off bigons
  bool built = false;              // produced by a library construction rather than supplied
};

/// Checks every arc-graph invariant; throws an Error naming the violated one.
inline Layout validate(const ArcGraph& g, ValidateOptions opt = {}) {
  validate_surface(g.surface);
  Layout L = compute_layout(g);

  std::map<Cycle, int> traced;
  for (const auto& c : L.cycles) traced[canonical_rotation(c)] = 0;
  for (std::size_t r = 0; r < g.regions.size(); ++r) {
    const Region& R = g.regions[r];
    if (R.genus < 0) fail(ErrorKind::Malformed, "region " + std::to_string(r) + " has negative genus");
    if (R.cycles.empty()) fail(ErrorKind::SideUsage, "region " + std::to_string(r) + " has no boundary cycle");
    for (const auto& c : R.cycles) {
      auto it = traced.find(canonical_rotation(c));
      if (it == traced.end())
        fail(ErrorKind::SideUsage, "region " + std::to_string(r) + " has a cycle that does not match the slot data");
      if (it->second++ > 0) fail(ErrorKind::SideUsage, "a boundary cycle is used twice (region " + std::to_string(r) + ")");
    }
  }
  for (const auto& [c, n] : traced)
    if (n == 0) {
      std::string what = c[0].is_piece ? "piece " + std::to_string(c[0].piece) : "arc " + std::to_string(c[0].arc);
      fail(ErrorKind::SideUsage, "boundary cycle through " + what + " is not assigned to any region");
    }

  std::map<std::string, int> used;
  for (const auto& p : g.surface.punctures) used[p.id] = 0;
  for (std::size_t r = 0; r < g.regions.size(); ++r)
    for (const auto& id : g.regions[r].punctures) {
      auto it = used.find(id);
      if (it == used.end()) fail(ErrorKind::OrphanPuncture, "region " + std::to_string(r) + " names unknown puncture '" + id + "'");
      ++it->second;
    }
  for (const auto& [id, n] : used)
    if (n != 1) fail(ErrorKind::OrphanPuncture, "puncture '" + id + "' assigned to " + std::to_string(n) + " regions");

  int sum = 0;
  for (const auto& R : g.regions) sum += R.chi();
  ++euler_stats().checks;
  if (opt.built) ++euler_stats().built_checks;
  if (sum != g.surface.chi() + static_cast<int>(g.arcs.size())) {
    ++euler_stats().failures;
    if (opt.built) ++euler_stats().built_failures;
    fail(ErrorKind::EulerMismatch, "sum of region chi " + std::to_string(sum) + " != chi(F) + #arcs = " +
                                       std::to_string(g.surface.chi() + static_cast<int>(g.arcs.size())));
  }
  // regions glued along arcs must form one surface, otherwise the identity holds only by accident
  std::vector<int> side_region(2 * g.arcs.size(), -1);
  for (std::size_t r = 0; r < g.regions.size(); ++r)
    for (const auto& c : g.regions[r].cycles)
      for (const auto& x : c)
        if (!x.is_piece) side_region[2 * x.arc + (x.side == Side::R)] = static_cast<int>(r);
  std::vector<int> comp(g.regions.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t a = 0; a < g.arcs.size(); ++a) comp[root(side_region[2 * a])] = root(side_region[2 * a + 1]);
  for (std::size_t r = 1; r < g.regions.size(); ++r)
    if (root(static_cast<int>(r)) != root(0)) {
      ++euler_stats().disconnected;
      fail(ErrorKind::EulerMismatch, "regions " + std::to_string(r) + " and 0 lie on different components of the cut surface");
    }

  for (std::size_t r = 0; r < g.regions.size(); ++r) {
    const Region& R = g.regions[r];
    if (R.genus != 0 || R.cycles.size() != 1 || !R.punctures.empty()) continue;
    const Cycle& c = R.cycles[0];
    auto piece_type = [&](const CycleItem& x) { return L.pieces[x.piece].type; };
    if (c.size() == 2) {
      const CycleItem& p = c[0].is_piece ? c[0] : c[1];
      const CycleItem& s = c[0].is_piece ? c[1] : c[0];
      if (piece_type(p) <= 2 && !opt.allow_inessential) fail(ErrorKind::InessentialArc, "arc " + std::to_string(s.arc) + " cuts off a bigon (region " + std::to_string(r) + ")");
    }
    if (c.size() == 4 && !opt.allow_parallel) {
      const CycleItem& p0 = c[0].is_piece ? c[0] : c[1];
      const CycleItem& p1 = c[0].is_piece ? c[2] : c[3];
      const CycleItem& s0 = c[0].is_piece ? c[1] : c[0];
      const CycleItem& s1 = c[0].is_piece ? c[3] : c[2];
      if (piece_type(p0) == 1 && piece_type(p1) == 1 && s0.arc != s1.arc)
        fail(ErrorKind::ParallelArcs, "arcs " + std::to_string(s0.arc) + " and " + std::to_string(s1.arc) + " bound a rectangle (region " + std::to_string(r) + ")");
    }
  }
  return L;
}

/// Leaf-level expansion of a weighted graph.
struct Expanded {
  ArcGraph leaves;                 // all weights 1; parallel leaves allowed
  std::vector<int> leaf_arc;       // leaf -> arc of the original graph
  std::vector<int> leaf_index;     // position of the leaf in its band
  std::vector<int> region_origin;  // leaf region -> original region, or -1 for a rectangle
};

inline Expanded discrete_representative(const ArcGraph& g, const std::vector<int>& weighting,
                                       ValidateOptions opt = {.allow_parallel = true}) {
  if (weighting.size() != g.arcs.size()) fail(ErrorKind::Malformed, "weighting has wrong length");
  for (int w : weighting)
    if (w < 1) fail(ErrorKind::Malformed, "weighting must be positive");
  Layout L = compute_layout(g);
  Expanded X;
  X.leaves.surface = g.surface;
  X.leaves.io = g.io;
  std::vector<int> first_leaf(g.arcs.size());
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    first_leaf[a] = static_cast<int>(X.leaf_arc.size());
    for (int i = 0; i < weighting[a]; ++i) {
      X.leaf_arc.push_back(static_cast<int>(a));
      X.leaf_index.push_back(i);
      X.leaves.arcs.push_back(Arc{{}, {}, 1});
    }
  }
  for (std::size_t w = 0; w < L.windows.size(); ++w) {
    int slot = 0;
    for (int k = 0; k < L.ends_in[w]; ++k) {
      auto [a, e] = L.slot_owner[w][k];
      int n = weighting[a];
      for (int j = 0; j < n; ++j) {
        int i = e == 0 ? j : n - 1 - j;
        Arc& leaf = X.leaves.arcs[first_leaf[a] + i];
        (e == 0 ? leaf.end1 : leaf.end2) = ArcEnd{static_cast<int>(w), slot++};
      }
    }
  }
  // regions of the original graph keyed by their outer sides / arcless boundary
  std::map<std::pair<int, Side>, int> side_region;
  std::map<int, int> boundary_region;
  for (std::size_t r = 0; r < g.regions.size(); ++r)
    for (const auto& c : g.regions[r].cycles)
      for (const auto& x : c) {
        if (!x.is_piece) side_region[{x.arc, x.side}] = static_cast<int>(r);
        else if (c.size() == 1) boundary_region[L.pieces[x.piece].boundary] = static_cast<int>(r);
      }
  Layout LL = compute_layout(X.leaves);
  X.leaves.regions.clear();
  for (const auto& R : g.regions) X.leaves.regions.push_back(Region{R.genus, R.punctures, {}});
  X.region_origin.resize(g.regions.size());
  for (std::size_t r = 0; r < g.regions.size(); ++r) X.region_origin[r] = static_cast<int>(r);
  for (const auto& c : LL.cycles) {
    const CycleItem& x = c.size() > 1 ? c[1] : c[0];
    int target = -1;
    if (x.is_piece) {
      target = boundary_region.at(LL.pieces[x.piece].boundary);
    } else {
      int a = X.leaf_arc[x.arc], i = X.leaf_index[x.arc];
      if (x.side == Side::L && i == 0) target = side_region.at({a, Side::L});
      else if (x.side == Side::R && i == weighting[a] - 1) target = side_region.at({a, Side::R});
    }
    if (target >= 0) {
      X.leaves.regions[target].cycles.push_back(c);
    } else {
      X.leaves.regions.push_back(Region{0, {}, {c}});
      X.region_origin.push_back(-1);
    }
  }
  opt.allow_parallel = true;
  opt.built = true;
  validate(X.leaves, opt);
  return X;
}

inline Expanded discrete_representative(const ArcGraph& g) { return discrete_representative(g, graph_weights(g)); }

// ---------------------------------------------------------------------------
// Construction helpers

/// Region description by anchors: each anchor item selects the traced cycle containing it.
struct RegionSpec {
  int genus = 0;
  std::vector<std::string> punctures;
  std::vector<CycleItem> anchors;
};

/// Builds regions from traced cycles. Cycles not named by any spec become
/// puncture-free disks.
inline void assign_regions(ArcGraph& g, const std::vector<RegionSpec>& specs = {}) {
  Layout L = compute_layout(g);
  std::vector<int> owner(L.cycles.size(), -1);
  auto find_cycle = [&](const CycleItem& x) {
    for (std::size_t c = 0; c < L.cycles.size(); ++c)
      for (const auto& y : L.cycles[c])
        if (y == x) return static_cast<int>(c);
    fail(ErrorKind::Malformed, "region anchor does not occur in any cycle");
  };
  g.regions.clear();
  for (const auto& s : specs) {
    Region R{s.genus, s.punctures, {}};
    for (const auto& a : s.anchors) {
      int c = find_cycle(a);
      if (owner[c] != -1) fail(ErrorKind::SideUsage, "cycle anchored twice");
      owner[c] = static_cast<int>(g.regions.size());
      R.cycles.push_back(L.cycles[c]);
    }
    g.regions.push_back(R);
  }
  for (std::size_t c = 0; c < L.cycles.size(); ++c)
    if (owner[c] == -1) g.regions.push_back(Region{0, {}, {L.cycles[c]}});
}

inline std::vector<MarkedPoint> points(std::initializer_list<std::initializer_list<const char*>> labels) {
  std::vector<MarkedPoint> out;
  for (const auto& l : labels) {
    MarkedPoint p;
    for (const char* s : l) p.label.insert(s);
    out.push_back(p);
  }
  return out;
}

}  // namespace arcop
