#include <catch_amalgamated.hpp>

#include "arcop/algebra_fixtures.hpp"
#include "arcop/correlator.hpp"
#include "arcop/graph_fixtures.hpp"

using namespace arcop;
using namespace arcop::fixtures;

TEST_CASE("triangle acts by insertion of the push-forward", "[correlator]") {
  auto sys = pt_system();
  auto g = graph_tri();
  Inputs in;
  in[0] = bar_basis(sys, WindowLabel::make_open({"T"}, {"S"}), {0, 0});
  in[1] = bar_basis(sys, WindowLabel::make_open({"S"}, {"U"}), {0, 0});
  auto res = act(sys, g, in, {2});
  REQUIRE(res.size() == 1);
  auto x = res[0].as_element();
  REQUIRE(format_bar(sys, x) == "1⊗x⊗1");
  REQUIRE(x.label == WindowLabel::make_open({"T"}, {"U"}));
}

TEST_CASE("glued triangles match composition", "[correlator]") {
  for (const auto& sys : {pt_system(), cp2cp1_system()}) {
    auto a = graph_tri(1, 1);
    auto b = graph_tri(2, 1, {"T", "U", "S"});
    auto r = glue(a, 2, b, 0);
    auto lhs = correlator(sys, r.graph);
    auto rhs = composed_correlator(sys, a, 2, b, 0, r.window_map);
    REQUIRE(lhs.slots() == rhs.slots());
    REQUIRE(lhs.table() == rhs.table());
    REQUIRE_FALSE(lhs.is_zero());
  }
}

TEST_CASE("local gluing catalog", "[correlator][catalog]") {
  std::map<std::string, bool> nonzero;
  for (const auto& sys : {pt_system(), cp2cp1_system()}) {
    for (const auto& cs : gluing_catalog()) {
      INFO(cs.name);
      GlueResult r;
      Correlator expect(sys, {});
      if (cs.b) {
        r = glue(cs.a, cs.wa, *cs.b, cs.wb);
        expect = composed_correlator(sys, cs.a, cs.wa, *cs.b, cs.wb, r.window_map);
      } else {
        r = self_glue(cs.a, cs.wa, cs.wb);
        expect = self_composed_correlator(sys, cs.a, cs.wa, cs.wb, r.window_map);
      }
      REQUIRE(correlator(sys, r.graph) == expect);
      for (auto [w1, w2] : cs.then_self) {
        auto r2 = self_glue(r.graph, w1, w2);
        expect = self_composed_correlator(sys, r.graph, w1, w2, r2.window_map);
        REQUIRE(correlator(sys, r2.graph) == expect);
        r = r2;
      }
      nonzero[cs.name] = nonzero[cs.name] || !expect.is_zero() || !cs.expect_nonzero;
    }
  }
  for (const auto& [name, nz] : nonzero) {
    INFO(name);
    CHECK(nz);
  }
}

TEST_CASE("catalog window weights stay small", "[correlator][catalog]") {
  for (const auto& cs : gluing_catalog())
    for (const ArcGraph* g : {&cs.a, cs.b ? &*cs.b : nullptr}) {
      if (!g) continue;
      INFO(cs.name);
      for (std::size_t w = 0; w < windows_of(g->surface).size(); ++w) CHECK(window_weight(*g, graph_weights(*g), w) <= 3);
    }
}

TEST_CASE("leaves closing into loops", "[correlator][gluing]") {
  // theta graph on the pants with the 1-2 arc moved past the basepoint on window 1:
  // self-gluing 1 to 2 closes that arc up
  ArcGraph p;
  p.surface.boundaries = {points({{}}), points({{}}), points({{}})};
  p.arcs = {Arc{{0, 0}, {1, 1}, 1}, Arc{{0, 1}, {2, 0}, 1}, Arc{{1, 0}, {2, 1}, 1}};
  assign_regions(p);
  auto r = self_glue(p, 0, 1);
  CHECK(r.closed_loops == 1);
  CHECK(r.graph.arcs.size() == 1);
  CHECK(self_glue(theta_pants(), 0, 1).closed_loops == 0);
  // the deleted loop costs one trace of the identity of the closed algebra
  for (const auto& sys : {pt_system(), cp2cp1_system()}) {
    auto glued = correlator(sys, r.graph);
    auto composed = self_composed_correlator(sys, p, 0, 1, r.window_map);
    REQUIRE_FALSE(glued.is_zero());
    Scalar d(sys.field(), static_cast<long>(sys.closed().dim()));
    REQUIRE(glued.slots() == composed.slots());
    for (const auto& [k, v] : composed.table()) CHECK(glued.table().at(k) * d == v);
    CHECK(glued.table().size() == composed.table().size());
  }
  for (const auto& cs : gluing_catalog()) {
    auto g = cs.b ? glue(cs.a, cs.wa, *cs.b, cs.wb) : self_glue(cs.a, cs.wa, cs.wb);
    CHECK(g.closed_loops == 0);
  }
}
