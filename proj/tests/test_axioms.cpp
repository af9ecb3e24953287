#include <catch_amalgamated.hpp>

#include "arcop/graph_fixtures.hpp"
#include "arcop/random_graphs.hpp"

using namespace arcop;
using namespace arcop::fixtures;

TEST_CASE("isomorphism ignores presentation", "[iso]") {
  auto g = graph_tri();
  // rotate the boundary so that the U point comes first
  ArcGraph h;
  h.surface.boundaries = {labelled({"U", "T", "S"})};
  h.arcs = {Arc{{1, 0}, {0, 1}, 1}, Arc{{0, 0}, {2, 0}, 1}};
  assign_regions(h);
  validate(h);
  CHECK(isomorphic(g, h));
  CHECK_FALSE(isomorphic(g, graph_tri(1, 1, {"S", "T", "U"})));
  CHECK_FALSE(isomorphic(g, graph_tri(2, 1)));

  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    auto x = random_graph(rng);
    CHECK(isomorphic(x, random_relabel(x, rng)));
    CHECK(canonical_form(x) == canonical_form(random_relabel(x, rng)));
  }
}

TEST_CASE("random graphs are valid", "[fuzz]") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) CHECK_NOTHROW(validate(random_graph(rng)));
}

TEST_CASE("gluing axioms on random triples", "[fuzz]") {
  auto rep = run_axiom_fuzz(250, 20240101);
  INFO((rep.notes.empty() ? std::string() : rep.notes.front()));
  CHECK(rep.triples == 250);
  CHECK(rep.associativity_failures == 0);
  CHECK(rep.equivariance_failures == 0);
  CHECK(rep.grading_failures == 0);
  CHECK(rep.self_gluings > 50);
}

TEST_CASE("grading of catalog gluings", "[gluing]") {
  for (const auto& c : gluing_catalog()) {
    if (!c.b) continue;
    INFO(c.name);
    auto r = glue(c.a, c.wa, *c.b, c.wb);
    GradingTag x = grading(c.a), y = grading(*c.b), z = grading(r.graph);
    if (windows_of(c.a.surface)[c.wa].closed)
      CHECK(z.g == x.g + y.g);
    else
      CHECK(z.chi_minus_1 == x.chi_minus_1 + y.chi_minus_1);
  }
}
