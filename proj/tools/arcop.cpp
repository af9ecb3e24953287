#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arcop/algebra_fixtures.hpp"
#include "arcop/cell_catalog.hpp"
#include "arcop/graph_fixtures.hpp"
#include "arcop/io.hpp"
#include "arcop/moduli.hpp"
#include "arcop/random_graphs.hpp"
#include "arcop/sullivan.hpp"

using namespace arcop;
using arcop::io::json;
namespace fs = std::filesystem;

namespace {

struct Exit {
  int code;
};

[[noreturn]] void rethrow_in(const std::string& file, const Error& e) {
  std::string msg = std::string(e.what()).substr(std::string(e.name()).size() + 2);
  if (msg.rfind(file, 0) == 0) throw e;
  throw Error(e.kind(), file + ": " + msg);
}

ArcGraph load_graph(const std::string& file) {
  try {
    return io::graph_from_json(io::read_json(file));
  } catch (const Error& e) {
    rethrow_in(file, e);
  }
}

BraneSystem load_system(const std::string& file, const std::string& field) {
  std::optional<Field> f;
  if (!field.empty()) f = io::parse_field(field);
  try {
    return io::system_from_json(io::read_json(file), f);
  } catch (const Error& e) {
    rethrow_in(file, e);
  }
}

Inputs load_inputs(const BraneSystem& sys, const std::string& file) {
  if (file.empty()) return {};
  try {
    return io::inputs_from_json(sys, io::read_json(file));
  } catch (const Error& e) {
    rethrow_in(file, e);
  }
}

// "G.json:w3" -> (file, window)
std::pair<std::string, int> file_window(const std::string& s) {
  auto pos = s.rfind(':');
  if (pos == std::string::npos) fail(ErrorKind::UsageError, "expected FILE:wN, got '" + s + "'");
  return {s.substr(0, pos), io::parse_window(s.substr(pos + 1))};
}

std::pair<int, int> window_pair(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos) fail(ErrorKind::UsageError, "expected wA:wB, got '" + s + "'");
  return {io::parse_window(s.substr(0, pos)), io::parse_window(s.substr(pos + 1))};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else io::write_text(out, text);
}

std::string format_correlator(const BraneSystem& sys, const Correlator& Y) {
  if (Y.slots().size() == 1) return format_bar(sys, Y.as_element());
  if (Y.table().empty()) return "0";
  std::string s;
  for (const auto& [k, v] : Y.table()) {
    if (!s.empty()) s += " + ";
    if (!v.is_one()) s += v.str() + "*";
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l) s += " ⊠ ";
      BarSpace V = Y.space(l);
      s += "(" + V.format_tuple(V.tuple(k[l])) + ")";
    }
  }
  return s;
}

json cells_to_json(const CellSum& s) {
  json a = json::array();
  for (const auto& [k, c] : s.terms) a.push_back(io::to_json(c.graph));
  return a;
}

// ---------------------------------------------------------------- fixtures

ArcGraph collar(const char* a, const char* b) {
  ArcGraph g;
  g.surface.boundaries = {points({{a}, {b}}), points({{}})};
  g.arcs = {Arc{{0, 0}, {2, 0}, 1}};
  assign_regions(g);
  return g;
}

void write_fixtures(const std::string& dir) {
  using namespace arcop::fixtures;
  fs::create_directories(dir + "/algebras");
  fs::create_directories(dir + "/catalog");
  auto put = [&](const std::string& name, const json& j) { io::write_text(dir + "/" + name, io::dump(j)); };
  put("algebras/k.json", io::to_json(fix_k()));
  put("algebras/s2.json", io::to_json(fix_s2()));
  put("algebras/cp1.json", io::to_json(fix_cp1()));
  put("algebras/cp2.json", io::to_json(fix_cp2()));
  put("algebras/dual-numbers.json", io::to_json(fix_dual_numbers()));
  auto pt = pt_system();
  put("pt-brane.json", io::to_json(pt));
  put("cp2cp1-brane.json", io::to_json(cp2cp1_system()));
  put("failing-i1.json", io::to_json(failing_i1_system()));

  put("graph-tri.json", io::to_json(graph_tri()));
  ArcGraph tri = graph_tri();
  tri.io = IoPartition{{0, 1}, {2}};
  put("graph-tri-sullivan.json", io::to_json(tri));
  put("strip.json", io::to_json(strip()));
  put("annulus-closed.json", io::to_json(closed_annulus()));
  put("annulus-lone.json", io::to_json(lone_annulus()));
  put("annulus-two-point.json", io::to_json(two_point_annulus()));
  put("pants.json", io::to_json(pants()));
  put("collar-st.json", io::to_json(collar("S", "T")));
  put("collar-ts.json", io::to_json(collar("T", "S")));

  Inputs units;
  units[0] = bar_basis(pt, WindowLabel::make_open({"T"}, {"S"}), {0, 0});
  units[1] = bar_basis(pt, WindowLabel::make_open({"S"}, {"U"}), {0, 0});
  put("units.json", io::to_json(pt, units));

  json cat = json::array();
  for (const auto& c : gluing_catalog()) {
    json e;
    e["name"] = c.name;
    e["a"] = io::to_json(c.a);
    e["wa"] = c.wa + 1;
    if (c.b) {
      e["b"] = io::to_json(*c.b);
      e["wb"] = c.wb + 1;
    } else {
      e["self"] = c.wb + 1;
    }
    json then = json::array();
    for (auto [x, y] : c.then_self) then.push_back({x + 1, y + 1});
    e["then_self"] = then;
    cat.push_back(e);
  }
  put("catalog/local-gluings.json", cat);
  json cells = json::array();
  for (const auto& c : sullivan_catalog()) cells.push_back(io::to_json(c.graph));
  put("catalog/sullivan-cells.json", cells);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arcop: arc graphs, gluing and correlators with exact arithmetic"};
  app.require_subcommand(1);
  std::string system_file, inputs_file, out_file, field, out_window;

  auto* validate_cmd = app.add_subcommand("validate", "validate a graph or brane-system file");
  std::string vfile;
  bool as_system = false;
  validate_cmd->add_option("file", vfile)->required();
  validate_cmd->add_flag("--as-system", as_system, "treat the file as a brane system and report its conditions");
  validate_cmd->add_option("--field", field, "Q or F2");

  auto* glue_cmd = app.add_subcommand("glue", "glue two graphs along windows");
  std::string ga, gb;
  glue_cmd->add_option("a", ga, "A.json:wN")->required();
  glue_cmd->add_option("b", gb, "B.json:wN")->required();
  glue_cmd->add_option("-o", out_file);

  auto* self_cmd = app.add_subcommand("self-glue", "glue two windows of one graph");
  std::string sfile, sw1, sw2;
  self_cmd->add_option("file", sfile)->required();
  self_cmd->add_option("w1", sw1)->required();
  self_cmd->add_option("w2", sw2)->required();
  self_cmd->add_option("-o", out_file);

  auto* corr_cmd = app.add_subcommand("correlate", "evaluate the correlator of a graph on inputs for every window");
  std::string cfile;
  bool action = false;
  corr_cmd->add_option("file", cfile)->required();
  corr_cmd->add_option("--system", system_file)->required();
  corr_cmd->add_option("--inputs", inputs_file)->required();
  corr_cmd->add_option("--field", field);
  corr_cmd->add_flag("--action", action, "sum over all discrete weightings matching the inputs");

  auto* act_cmd = app.add_subcommand("act", "apply a graph to inputs, reading off the output windows");
  std::string afile;
  std::vector<std::string> outs;
  act_cmd->add_option("file", afile)->required();
  act_cmd->add_option("--system", system_file)->required();
  act_cmd->add_option("--inputs", inputs_file)->required();
  act_cmd->add_option("--out", outs, "output windows")->required();
  act_cmd->add_option("--field", field);

  auto* sull_cmd = app.add_subcommand("sullivan", "Sullivan cells");
  sull_cmd->require_subcommand(1);
  auto* scheck = sull_cmd->add_subcommand("check", "check the Sullivan condition of a graph with io");
  std::string scfile;
  scheck->add_option("file", scfile)->required();
  auto* scompose = sull_cmd->add_subcommand("compose", "compose two cells");
  std::string sa, sb, spair;
  scompose->add_option("a", sa)->required();
  scompose->add_option("b", sb)->required();
  scompose->add_option("--pair", spair, "wOut:wIn")->required();
  scompose->add_option("-o", out_file);
  auto* sbound = sull_cmd->add_subcommand("boundary", "cell boundary over F2");
  std::string sbfile;
  sbound->add_option("file", sbfile)->required();
  sbound->add_option("-o", out_file);

  auto* class_cmd = app.add_subcommand("classify", "moduli-layer predicates");
  std::string clfile;
  class_cmd->add_option("file", clfile)->required();

  auto* dual_cmd = app.add_subcommand("duality", "open/closed duality decomposition");
  std::string dfile, annuli_dir;
  dual_cmd->add_option("file", dfile)->required();
  dual_cmd->add_option("-o", out_file, "core output");
  dual_cmd->add_option("--annuli", annuli_dir, "directory for the annuli");

  auto* ax_cmd = app.add_subcommand("axioms", "seeded fuzz of the gluing axioms");
  int fuzz = 200;
  std::uint64_t seed = 1;
  ax_cmd->add_option("--fuzz", fuzz);
  ax_cmd->add_option("--seed", seed);

  auto* dot_cmd = app.add_subcommand("export-dot", "DOT text of a graph");
  std::string dotfile;
  dot_cmd->add_option("file", dotfile)->required();
  dot_cmd->add_option("-o", out_file);

  auto* fix_cmd = app.add_subcommand("write-fixtures", "regenerate the shipped fixture files");
  std::string fixdir = "fixtures";
  fix_cmd->add_option("dir", fixdir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate_cmd) {
      if (as_system) {
        auto sys = load_system(vfile, field);
        auto rep = check_conditions(sys);
        json j{{"C", rep.commutative_C}, {"E", rep.euler_E}, {"I1", rep.self_intersection_I1}, {"I2", rep.self_intersection_I2},
               {"projection_formula", rep.projection_formula}};
        std::cout << io::dump(j);
      } else {
        load_graph(vfile);
        std::cout << "ok\n";
      }
    } else if (*glue_cmd) {
      auto [fa, wa] = file_window(ga);
      auto [fb, wb] = file_window(gb);
      auto r = glue(load_graph(fa), wa, load_graph(fb), wb);
      emit(io::dump(io::to_json(r.graph)), out_file);
    } else if (*self_cmd) {
      auto r = self_glue(load_graph(sfile), io::parse_window(sw1), io::parse_window(sw2));
      emit(io::dump(io::to_json(r.graph)), out_file);
    } else if (*corr_cmd) {
      auto g = load_graph(cfile);
      auto sys = load_system(system_file, field);
      auto in = load_inputs(sys, inputs_file);
      Scalar v = action ? evaluate_graph_action(sys, g, in) : evaluate(sys, g, graph_weights(g), in);
      std::cout << v.str() << "\n";
    } else if (*act_cmd) {
      auto g = load_graph(afile);
      auto sys = load_system(system_file, field);
      auto in = load_inputs(sys, inputs_file);
      std::vector<int> ow;
      for (const auto& o : outs) ow.push_back(io::parse_window(o));
      auto res = act(sys, g, in, ow);
      if (res.empty()) std::cout << "0\n";
      for (const auto& Y : res) std::cout << format_correlator(sys, Y) << "\n";
    } else if (*scheck) {
      auto g = load_graph(scfile);
      if (!g.io) fail(ErrorKind::Malformed, scfile + ": no io partition");
      bool ok = is_sullivan(g);
      std::cout << (ok ? "sullivan" : "not sullivan") << "\n";
      if (!ok) throw Exit{3};
    } else if (*scompose) {
      auto [wo, wi] = window_pair(spair);
      auto r = cell_compose(make_cell(load_graph(sa)), make_cell(load_graph(sb)), {wo, wi});
      emit(io::dump(cells_to_json(r.sum)), out_file);
    } else if (*sbound) {
      emit(io::dump(cells_to_json(cell_boundary(make_cell(load_graph(sbfile))))), out_file);
    } else if (*class_cmd) {
      auto c = classify(load_graph(clfile));
      json deg = json::array();
      for (int w : c.degenerate_windows) deg.push_back(w + 1);
      json j{{"quasi_filling", c.quasi_filling}, {"polygonal_any_punctures", c.polygonal_any_punctures}, {"degenerate_windows", deg},
             {"mco_member", c.mco_member}, {"dimension", c.dimension}};
      std::cout << io::dump(j);
    } else if (*dual_cmd) {
      auto D = duality_decompose(load_graph(dfile));
      emit(io::dump(io::to_json(D.core)), out_file);
      if (!annuli_dir.empty()) {
        fs::create_directories(annuli_dir);
        for (const auto& P : D.annuli)
          io::write_text(annuli_dir + "/annulus-" + std::to_string(P.boundary + 1) + ".json", io::dump(io::to_json(P.annulus)));
      }
      if (!out_file.empty()) std::cout << D.annuli.size() << " annuli\n";
    } else if (*ax_cmd) {
      auto rep = run_axiom_fuzz(fuzz, seed);
      json j{{"triples", rep.triples}, {"self_gluings", rep.self_gluings}, {"associativity_failures", rep.associativity_failures},
             {"equivariance_failures", rep.equivariance_failures}, {"grading_failures", rep.grading_failures}};
      std::cout << io::dump(j);
      if (rep.associativity_failures + rep.equivariance_failures + rep.grading_failures > 0) return 3;
    } else if (*dot_cmd) {
      emit(io::export_dot(load_graph(dotfile)), out_file);
    } else if (*fix_cmd) {
      write_fixtures(fixdir);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UsageError: return 1;
      case ErrorKind::ParseError: return 2;
      default: return 3;
    }
  }
  return 0;
}
