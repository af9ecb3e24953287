#include <catch_amalgamated.hpp>

#include "arcop/gluing.hpp"
#include "arcop/graph_fixtures.hpp"

using namespace arcop;
using namespace arcop::fixtures;

TEST_CASE("basic gluings", "[gluing]") {
  SECTION("triangle to triangle along w3 and w1") {
    auto t = graph_tri();
    auto r = glue(t, 2, graph_tri(2, 1), 0);
    validate(r.graph);
    REQUIRE(r.graph.surface.genus == 0);
    REQUIRE(r.graph.surface.boundaries.size() == 1);
    REQUIRE(r.graph.surface.boundaries[0].size() == 4);
    REQUIRE(r.window_map.size() == 4);
  }
  SECTION("closed annuli") {
    auto a = closed_annulus(2);
    auto r = glue(a, 1, a, 0);
    REQUIRE(r.graph.surface.boundaries.size() == 2);
    REQUIRE(r.graph.arcs.size() == 1);
    REQUIRE(r.graph.arcs[0].weight == 2);
    REQUIRE(r.graph.surface.punctures.empty());
  }
  SECTION("weight mismatch") {
    REQUIRE_THROWS_AS(glue(closed_annulus(2), 1, closed_annulus(1), 0), Error);
  }
  SECTION("kind mismatch") {
    REQUIRE_THROWS_AS(glue(closed_annulus(1), 1, strip(), 0), Error);
  }
}
