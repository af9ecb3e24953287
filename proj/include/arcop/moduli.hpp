#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "arcop/gluing.hpp"
#include "arcop/iso.hpp"
#include "arcop/surface.hpp"

namespace arcop {

struct ModuliClassification {
  bool quasi_filling = false;
  bool polygonal_any_punctures = false;
  std::vector<int> degenerate_windows;  // 0-based
  bool mco_member = false;
  int dimension = 0;
};

namespace detail {

// Region owning each piece of the layout.
inline std::vector<int> piece_regions(const ArcGraph& g, const Layout& L) {
  std::vector<int> owner(L.pieces.size(), -1);
  for (std::size_t r = 0; r < g.regions.size(); ++r)
    for (const auto& c : g.regions[r].cycles)
      for (const auto& x : c)
        if (x.is_piece) owner[x.piece] = static_cast<int>(r);
  return owner;
}

inline int piece_of_segment(const Layout& L, int w, int k) {
  for (const auto& p : L.pieces)
    for (const auto& s : p.segments)
      if (s == std::pair<int, int>{w, k}) return p.id;
  throw std::logic_error("window segment without piece");
}

}  // namespace detail

/// Open windows whose two end flags bound one region without forming a single edge of it.
inline std::vector<int> degenerate_windows(const ArcGraph& g) {
  Layout L = compute_layout(g);
  auto owner = detail::piece_regions(g, L);
  std::vector<int> out;
  for (int w = 0; w < static_cast<int>(L.windows.size()); ++w) {
    const Window& W = L.windows[w];
    if (W.closed || g.surface.boundaries[W.boundary].size() == 1) continue;
    int first = detail::piece_of_segment(L, w, 0);
    int last = detail::piece_of_segment(L, w, L.ends_in[w]);
    if (owner[first] == owner[last]) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------- open/closed duality

struct DualityPiece {
  ArcGraph annulus;  // the cut boundary is the last window
  int boundary = 0;  // boundary of the input it carries
  int core_window = 0;
};

struct DualityDecomposition {
  ArcGraph core;  // may carry arcs that cut off bigons
  std::vector<DualityPiece> annuli;
};

namespace detail {

inline bool carries_open_windows(const std::vector<MarkedPoint>& b) { return !(b.size() == 1 && b[0].label.empty()); }

}  // namespace detail

/// Cuts a collar off every boundary with open windows.
inline DualityDecomposition duality_decompose(const ArcGraph& g) {
  Layout L = validate(g);
  DualityDecomposition D;
  ArcGraph& core = D.core;
  core.surface = g.surface;
  const auto& bs = g.surface.boundaries;
  for (std::size_t b = 0; b < bs.size(); ++b)
    if (detail::carries_open_windows(bs[b])) core.surface.boundaries[b] = points({{}});
  auto core_windows = windows_of(core.surface);
  auto core_window_of = [&](int b) {
    for (int w = 0; w < static_cast<int>(core_windows.size()); ++w)
      if (core_windows[w].boundary == b) return w;
    throw std::logic_error("boundary without window");
  };
  // arc ends on a cut boundary line up from its first point
  std::map<ArcEnd, ArcEnd> moved;
  for (int b = 0; b < static_cast<int>(bs.size()); ++b) {
    if (!detail::carries_open_windows(bs[b])) {
      for (int w = 0; w < static_cast<int>(L.windows.size()); ++w)
        if (L.windows[w].boundary == b)
          for (int k = 0; k < L.ends_in[w]; ++k) moved[{w, k}] = {core_window_of(b), k};
      continue;
    }
    int slot = 0;
    DualityPiece P;
    P.boundary = b;
    P.core_window = core_window_of(b);
    const int n = static_cast<int>(bs[b].size());
    P.annulus.surface.boundaries = {bs[b], points({{}})};
    std::vector<int> band_weight;
    for (int j = 0; j < n; ++j) {
      int w = L.window_of(b, j);
      int total = 0;
      for (int k = 0; k < L.ends_in[w]; ++k) {
        moved[{w, k}] = {P.core_window, slot++};
        auto [a, e] = L.slot_owner[w][k];
        total += g.arcs[a].weight;
      }
      if (total > 0) {
        P.annulus.arcs.push_back(Arc{{j, 0}, {n, 0}, total});
        band_weight.push_back(total);
      }
    }
    // the cut runs against the boundary orientation
    const int m = static_cast<int>(P.annulus.arcs.size());
    for (int i = 0; i < m; ++i) P.annulus.arcs[i].end2.slot = m - 1 - i;
    assign_regions(P.annulus);
    if (m == 0) {
      P.annulus.regions[0].cycles.push_back(P.annulus.regions[1].cycles[0]);
      P.annulus.regions.pop_back();
    }
    validate(P.annulus, {.built = true});
    D.annuli.push_back(std::move(P));
  }
  for (const auto& a : g.arcs) core.arcs.push_back(Arc{moved.at(a.end1), moved.at(a.end2), a.weight});

  Layout CL = compute_layout(core);
  std::vector<RegionSpec> specs;
  for (const auto& R : g.regions) {
    RegionSpec s{R.genus, R.punctures, {}};
    for (const auto& c : R.cycles) {
      auto it = std::find_if(c.begin(), c.end(), [](const CycleItem& x) { return !x.is_piece; });
      if (it != c.end()) s.anchors.push_back(*it);
      else s.anchors.push_back(CycleItem::of_piece(CL.arcless_piece[L.pieces[c[0].piece].boundary]));
    }
    specs.push_back(std::move(s));
  }
  assign_regions(core, specs);
  validate(core, {.allow_parallel = true, .allow_inessential = true, .built = true});
  return D;
}

/// Glues every annulus back onto the core.
inline ArcGraph duality_reassemble(const DualityDecomposition& D) {
  const ValidateOptions relaxed{.allow_parallel = true, .allow_inessential = true};
  detail::EngineInput in;
  in.graphs.push_back(discrete_representative(D.core, graph_weights(D.core), relaxed).leaves);
  for (std::size_t i = 0; i < D.annuli.size(); ++i) {
    const auto& P = D.annuli[i];
    in.graphs.push_back(discrete_representative(P.annulus).leaves);
    int cut = static_cast<int>(P.annulus.surface.boundaries[0].size());
    in.glue.push_back({{0, P.core_window}, {static_cast<int>(i) + 1, cut}});
  }
  if (D.annuli.empty()) return D.core;
  return detail::finish(detail::glue_leaves(in)).graph;
}

// ---------------------------------------------------------------- general position

/// Subadditivity of the arc count under gluing.
inline bool general_position(const ArcGraph& a, int wa, const ArcGraph& b, int wb) {
  auto r = glue(a, wa, b, wb);
  return r.graph.arcs.size() <= a.arcs.size() + b.arcs.size();
}

/// General position of the duality pieces along all cuts at once.
inline bool duality_in_general_position(const DualityDecomposition& D) {
  std::size_t bound = D.core.arcs.size();
  for (const auto& P : D.annuli) bound += P.annulus.arcs.size();
  return duality_reassemble(D).arcs.size() <= bound;
}

// ---------------------------------------------------------------- classification

/// Every region is a polygon, with any number of punctures.
inline bool polygonal_any_punctures(const ArcGraph& g) {
  return std::all_of(g.regions.begin(), g.regions.end(), [](const Region& R) { return R.genus == 0 && R.cycles.size() == 1; });
}

/// Every region is a polygon or a once-punctured polygon.
inline bool quasi_filling(const ArcGraph& g) {
  return polygonal_any_punctures(g) &&
         std::all_of(g.regions.begin(), g.regions.end(), [](const Region& R) { return R.punctures.size() <= 1; });
}

inline ModuliClassification classify(const ArcGraph& g) {
  validate(g);
  ModuliClassification c;
  c.polygonal_any_punctures = polygonal_any_punctures(g);
  c.quasi_filling = quasi_filling(g);
  c.degenerate_windows = degenerate_windows(g);
  c.dimension = static_cast<int>(g.arcs.size()) - 1;
  if (c.polygonal_any_punctures) {
    auto D = duality_decompose(g);
    c.mco_member = duality_in_general_position(D) && std::all_of(D.annuli.begin(), D.annuli.end(), [](const DualityPiece& P) {
                     return degenerate_windows(P.annulus).empty();
                   });
  }
  return c;
}

}  // namespace arcop
