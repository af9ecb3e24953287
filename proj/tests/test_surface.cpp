#include <catch_amalgamated.hpp>

#include "arcop/graph_fixtures.hpp"

using namespace arcop;
using namespace arcop::fixtures;

namespace {

ErrorKind error_of(const ArcGraph& g) {
  try {
    validate(g);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("graph unexpectedly valid");
  return ErrorKind::Malformed;
}

int chi_sum(const ArcGraph& g) {
  int s = 0;
  for (const auto& r : g.regions) s += r.chi();
  return s;
}

}  // namespace

TEST_CASE("triangle graph", "[surface]") {
  auto g = graph_tri();
  auto L = validate(g);
  REQUIRE(g.regions.size() == 3);
  REQUIRE(chi_sum(g) == 3);
  REQUIRE(L.windows.size() == 3);
  REQUIRE(L.windows[2].label == WindowLabel::make_open({"U"}, {"T"}));
  int type1 = 0, type3 = 0;
  for (const auto& p : L.pieces) (p.type == 1 ? type1 : type3) += 1;
  REQUIRE(type1 == 1);
  REQUIRE(type3 == 3);

  SECTION("raised genus") {
    g.regions[0].genus = 1;
    REQUIRE(error_of(g) == ErrorKind::EulerMismatch);
  }
  SECTION("cycle moved between regions") {
    g.regions[0].cycles.push_back(g.regions[1].cycles[0]);
    REQUIRE(error_of(g) == ErrorKind::SideUsage);
  }
  SECTION("cycle missing") {
    g.regions.pop_back();
    REQUIRE(error_of(g) == ErrorKind::SideUsage);
  }
  SECTION("orphan puncture") {
    g.surface.punctures.push_back({"p", {"S"}});
    REQUIRE(error_of(g) == ErrorKind::OrphanPuncture);
  }
}

TEST_CASE("inessential and parallel arcs", "[surface]") {
  SECTION("bigon at a lone window") {
    ArcGraph g;
    g.surface.boundaries = {points({{"S"}})};
    g.arcs = {Arc{{0, 0}, {0, 1}, 1}};
    assign_regions(g);
    REQUIRE(error_of(g) == ErrorKind::InessentialArc);
  }
  SECTION("bigon at an empty point") {
    ArcGraph g;
    g.surface.boundaries = {points({{}}), points({{}})};
    g.arcs = {Arc{{0, 0}, {1, 0}, 1}, Arc{{0, 1}, {0, 2}, 1}};
    assign_regions(g);
    REQUIRE(error_of(g) == ErrorKind::InessentialArc);
  }
  SECTION("two parallel arcs") {
    ArcGraph g;
    g.surface.boundaries = {points({{"S"}, {"T"}})};
    g.arcs = {Arc{{0, 0}, {1, 1}, 1}, Arc{{0, 1}, {1, 0}, 1}};
    assign_regions(g);
    REQUIRE(error_of(g) == ErrorKind::ParallelArcs);
  }
  SECTION("empty-labelled point must be alone") {
    ArcGraph g;
    g.surface.boundaries = {points({{}, {"S"}})};
    assign_regions(g);
    REQUIRE(error_of(g) == ErrorKind::Malformed);
  }
}

TEST_CASE("discrete representative", "[surface]") {
  SECTION("triangle with weights 2 and 3") {
    auto g = graph_tri(2, 3);
    validate(g);
    auto X = discrete_representative(g);
    REQUIRE(X.leaves.arcs.size() == 5);
    REQUIRE(window_weight(g, graph_weights(g), 0) == 2);
    REQUIRE(window_weight(g, graph_weights(g), 1) == 3);
    REQUIRE(window_weight(g, graph_weights(g), 2) == 5);
    REQUIRE(X.leaves.regions.size() == 3 + 1 + 2);
    REQUIRE(chi_sum(X.leaves) == 1 + 5);
  }
  SECTION("all weights one is the identity on regions") {
    auto g = graph_tri();
    auto X = discrete_representative(g);
    REQUIRE(X.leaves.arcs == g.arcs);
    REQUIRE(X.leaves.regions == g.regions);
  }
  SECTION("annulus weight 3") {
    auto g = closed_annulus(3);
    validate(g);
    auto X = discrete_representative(g);
    REQUIRE(X.leaves.arcs.size() == 3);
    REQUIRE(X.leaves.regions.size() == 3);
    REQUIRE(chi_sum(X.leaves) == 3);
  }
  SECTION("closed window with one arc counted twice") {
    ArcGraph g;
    g.surface.boundaries = {points({{}}), points({{"S"}})};
    g.arcs = {Arc{{0, 0}, {0, 1}, 2}};
    REQUIRE(window_weight(g, graph_weights(g), 0) == 4);
    REQUIRE(window_weight(g, graph_weights(g), 1) == 0);
  }
}

TEST_CASE("cut data must glue to a connected surface", "[surface]") {
  // interleaved chords on the outer boundary and a separate chord on the inner one
  ArcGraph g;
  g.surface.boundaries = {points({{"T"}, {"S"}}), points({{"S"}, {"T"}, {"T"}})};
  g.arcs = {Arc{{4, 0}, {2, 1}, 1}, Arc{{3, 0}, {2, 0}, 1}, Arc{{0, 0}, {1, 0}, 1}};
  assign_regions(g);
  CHECK(chi_sum(g) == g.surface.chi() + 3);
  CHECK(error_of(g) == ErrorKind::EulerMismatch);
}
