#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "arcop/algebra_fixtures.hpp"
#include "arcop/graph_fixtures.hpp"
#include "arcop/io.hpp"
#include "arcop/random_graphs.hpp"

using namespace arcop;
using namespace arcop::fixtures;
using arcop::io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(ARCOP_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& file) {
  std::ifstream f(file, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("graph files reproduce byte for byte", "[io]") {
  for (const char* name : {"graph-tri.json", "graph-tri-sullivan.json", "strip.json", "annulus-closed.json", "annulus-lone.json",
                           "annulus-two-point.json", "pants.json", "collar-st.json", "collar-ts.json"}) {
    INFO(name);
    std::string text = slurp(fixture(name));
    REQUIRE_FALSE(text.empty());
    auto g = io::graph_from_json(json::parse(text));
    CHECK(io::dump(io::to_json(g)) == text);
    CHECK(io::graph_from_json(io::to_json(g)) == g);
  }
  CHECK(io::graph_from_json(io::read_json(fixture("graph-tri.json"))) == graph_tri());
}

TEST_CASE("system and algebra files reproduce byte for byte", "[io]") {
  for (const char* name : {"pt-brane.json", "cp2cp1-brane.json", "failing-i1.json"}) {
    INFO(name);
    std::string text = slurp(fixture(name));
    auto sys = io::system_from_json(json::parse(text));
    CHECK(io::dump(io::to_json(sys)) == text);
  }
  for (const char* name : {"algebras/k.json", "algebras/s2.json", "algebras/cp1.json", "algebras/cp2.json", "algebras/dual-numbers.json"}) {
    INFO(name);
    std::string text = slurp(fixture(name));
    CHECK(io::dump(io::to_json(io::algebra_from_json(json::parse(text)))) == text);
  }
  CHECK(io::to_json(io::system_from_json(io::to_json(pt_system()))) == io::to_json(pt_system()));
}

TEST_CASE("field override", "[io]") {
  auto j = io::to_json(cp2cp1_system());
  auto sys = io::system_from_json(j, Field::F2);
  CHECK(sys.field() == Field::F2);
  CHECK(check_conditions(sys).commutative_C);
}

TEST_CASE("scalars", "[io]") {
  CHECK(io::scalar_to_json(Scalar::parse(Field::Q, "-2/4")) == "-1/2");
  CHECK(io::scalar_to_json(Scalar(Field::F2, 3)) == 1);
  CHECK(io::scalar_from_json(Field::Q, 7, "") == Scalar(Field::Q, 7));
  CHECK(io::scalar_from_json(Field::Q, "3/6", "") == Scalar::parse(Field::Q, "1/2"));
  CHECK_THROWS_AS(io::scalar_from_json(Field::Q, "x", "/p"), Error);
}

TEST_CASE("inputs", "[io]") {
  auto sys = pt_system();
  std::string text = slurp(fixture("units.json"));
  auto in = io::inputs_from_json(sys, json::parse(text));
  REQUIRE(in.size() == 2);
  CHECK(in.count(0) == 1);
  CHECK(in.count(1) == 1);
  CHECK(format_bar(sys, in.at(0)) == "1⊗1");
  CHECK(io::dump(io::to_json(sys, in)) == text);
}

TEST_CASE("random graphs survive a round trip", "[io]") {
  Rng rng(23);
  for (int i = 0; i < 80; ++i) {
    auto g = random_graph(rng);
    auto j = io::to_json(g);
    auto h = io::graph_from_json(json::parse(io::dump(j)));
    CHECK(h == g);
    CHECK(io::to_json(h) == j);
  }
}

TEST_CASE("parse errors carry the offending path", "[io]") {
  auto tri = io::to_json(graph_tri());
  SECTION("missing key") {
    auto j = tri;
    j.erase("arcs");
    auto m = error_of([&] { io::graph_from_json(j); });
    CHECK(m.find("ParseError") != std::string::npos);
    CHECK(m.find("\"arcs\"") != std::string::npos);
  }
  SECTION("wrong type") {
    auto j = tri;
    j["arcs"][1]["slot2"] = "zero";
    CHECK(error_of([&] { io::graph_from_json(j); }).find("/arcs/1/slot2") != std::string::npos);
  }
  SECTION("window out of range") {
    auto j = tri;
    j["arcs"][0]["w2"] = 9;
    auto m = error_of([&] { io::graph_from_json(j); });
    CHECK(m.find("IndexOutOfRange") != std::string::npos);
    CHECK(m.find("/arcs/0") != std::string::npos);
  }
  SECTION("bad side") {
    auto j = tri;
    j["regions"][1]["cycles"][0][1]["side"] = "X";
    CHECK(error_of([&] { io::graph_from_json(j); }).find("/regions/1/cycles/0/1/side") != std::string::npos);
  }
  SECTION("invalid graph") {
    auto j = tri;
    j["arcs"][0]["slot2"] = 0;
    j["arcs"][1]["slot2"] = 1;
    CHECK_THROWS_AS(io::graph_from_json(j), Error);
  }
  SECTION("unknown basis label") {
    auto sys = pt_system();
    auto j = json::parse(slurp(fixture("units.json")));
    j["w2"]["terms"][0][0][1] = "q";
    CHECK(error_of([&] { io::inputs_from_json(sys, j); }).find("/w2/terms/0/0/1") != std::string::npos);
  }
  SECTION("bad window key") {
    auto sys = pt_system();
    auto j = json::parse(slurp(fixture("units.json")));
    j["w0"] = j["w1"];
    CHECK(error_of([&] { io::inputs_from_json(sys, j); }).find("w0") != std::string::npos);
  }
  SECTION("malformed text") {
    std::string f = "/tmp/arcop-io-bad.json";
    io::write_text(f, "{\"arcs\": [");
    CHECK(error_of([&] { io::read_json(f); }).find("byte") != std::string::npos);
  }
}

TEST_CASE("DOT export", "[io]") {
  std::string d = io::export_dot(graph_tri());
  CHECK(d.rfind("graph arcgraph {", 0) == 0);
  CHECK(count(d, "    w1 [") == 1);
  CHECK(count(d, "    w3 [") == 1);
  CHECK(count(d, " [label=\"w") == 3);
  CHECK(count(d, "[style=invis]") == 2);
  CHECK(count(d, "label=\"a") == 2);
  CHECK(count(d, "subgraph cluster_region") == 3);
  CHECK(io::export_dot(io::graph_from_json(io::to_json(graph_tri()))) == d);

  ArcGraph empty;
  empty.surface.boundaries = {points({{"S"}, {"T"}})};
  assign_regions(empty);
  std::string e = io::export_dot(empty);
  CHECK(count(e, "label=\"a") == 0);
  CHECK(count(e, " [label=\"w") == 2);
  CHECK(count(e, "subgraph cluster_region") == 1);
}
