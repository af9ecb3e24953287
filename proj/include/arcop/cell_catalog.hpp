#pragma once

#include <map>
#include <string>
#include <vector>

#include "arcop/graph_fixtures.hpp"
#include "arcop/random_graphs.hpp"
#include "arcop/sullivan.hpp"

namespace arcop::fixtures {

/// Every in/out partition making g a Sullivan graph.
inline std::vector<IoPartition> sullivan_partitions(const ArcGraph& g) {
  const int W = static_cast<int>(windows_of(g.surface).size());
  std::vector<IoPartition> out;
  for (int mask = 1; mask < (1 << W) - 1; ++mask) {
    IoPartition io;
    for (int w = 0; w < W; ++w) (mask >> w & 1 ? io.in : io.out).push_back(w);
    if (is_sullivan(g, io)) out.push_back(io);
  }
  return out;
}

/**
 * Sullivan cells: hand-picked ones followed by distinct random cells,
 * `per_size` of each arc count from 1 to max_arcs.
 */
inline std::vector<SullivanCell> sullivan_catalog(int max_arcs = 4, int per_size = 8, std::uint64_t seed = 5) {
  std::map<std::string, SullivanCell> seen;
  std::vector<SullivanCell> out;
  auto take = [&](const ArcGraph& g, const IoPartition& io) {
    SullivanCell c = make_cell(g, io);
    if (seen.emplace(canonical_form(c.graph), c).second) out.push_back(c);
  };
  take(graph_tri(), {{0, 1}, {2}});
  take(graph_tri(), {{2}, {0, 1}});
  take(strip("S", "T"), {{0}, {1}});
  take(closed_annulus(), {{0}, {1}});
  take(lone_annulus(), {{1}, {0}});
  take(pants(), {{2}, {0, 1}});
  take(fan({"T", "S", "U", "T"}, {1, 1, 1}), {{0, 1, 2}, {3}});
  take(fan({"T", "S", "U", "T"}, {1, 1, 1}), {{3}, {0, 1, 2}});
  Rng rng(seed);
  std::map<int, int> count;
  for (const auto& c : out) ++count[static_cast<int>(c.graph.arcs.size())];
  for (int guard = 0; guard < 20000; ++guard) {
    ArcGraph g = random_graph(rng, max_arcs);
    int n = static_cast<int>(g.arcs.size());
    if (count[n] >= per_size) continue;
    auto ps = sullivan_partitions(g);
    if (ps.empty()) continue;
    SullivanCell c = make_cell(g, ps[rng.below(static_cast<int>(ps.size()))]);
    if (seen.emplace(canonical_form(c.graph), c).second) {
      out.push_back(c);
      ++count[n];
    }
    bool done = true;
    for (int k = 1; k <= max_arcs; ++k) done &= count[k] >= per_size;
    if (done) break;
  }
  return out;
}

}  // namespace arcop::fixtures
