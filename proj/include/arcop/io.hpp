#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcop/bar.hpp"
#include "arcop/correlator.hpp"
#include "arcop/surface.hpp"

namespace arcop::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- helpers

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) { fail(ErrorKind::ParseError, path + ": " + what); }

inline const json& at(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing \"" + std::string(key) + "\"");
  return *it;
}

inline int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

}  // namespace detail

inline Field parse_field(const std::string& s) {
  if (s == "Q") return Field::Q;
  if (s == "F2") return Field::F2;
  fail(ErrorKind::ParseError, "unknown field '" + s + "'");
}

/// Rationals as "p/q" strings, F2 values as 0/1 integers.
inline json scalar_to_json(const Scalar& s) {
  if (s.field() == Field::F2) return s.is_zero() ? 0 : 1;
  return s.str();
}

inline Scalar scalar_from_json(Field f, const json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(f, j.get<long>());
  if (j.is_string()) {
    try {
      return Scalar::parse(f, j.get<std::string>());
    } catch (const Error& e) {
      detail::bad(path, e.what());
    }
  }
  detail::bad(path, "expected a scalar");
}

inline json label_to_json(const BraneLabel& l) {
  json a = json::array();
  for (const auto& x : l) a.push_back(x);
  return a;
}

inline BraneLabel label_from_json(const json& j, const std::string& path) {
  BraneLabel l;
  if (j.is_string()) {
    l.insert(j.get<std::string>());
    return l;
  }
  detail::get_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) l.insert(detail::get_string(j[i], path + "/" + std::to_string(i)));
  return l;
}

// ---------------------------------------------------------------- algebras and systems

inline json to_json(const FrobeniusAlgebra& A) {
  const AlgebraSpec& s = A.spec();
  json j;
  j["name"] = s.name;
  j["field"] = field_name(s.field);
  j["basis"] = json::array();
  for (const auto& b : s.basis) j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
  j["unit"] = json::array();
  for (const auto& c : s.unit) j["unit"].push_back(scalar_to_json(c));
  j["trace"] = json::array();
  for (const auto& c : s.trace) j["trace"].push_back(scalar_to_json(c));
  j["mul"] = json::array();
  for (const auto& e : s.mul)
    if (!e.c.is_zero()) j["mul"].push_back({e.i, e.j, e.k, scalar_to_json(e.c)});
  return j;
}

/// `field` overrides the field named in the file.
inline FrobeniusAlgebra algebra_from_json(const json& j, const std::string& path = "", std::optional<Field> field = {}) {
  using namespace detail;
  AlgebraSpec s;
  s.name = get_string(at(j, "name", path), path + "/name");
  s.field = field ? *field : parse_field(get_string(at(j, "field", path), path + "/field"));
  const json& basis = get_array(at(j, "basis", path), path + "/basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string p = path + "/basis/" + std::to_string(i);
    s.basis.push_back({get_string(at(basis[i], "label", p), p + "/label"), get_int(at(basis[i], "degree", p), p + "/degree")});
  }
  auto vec = [&](const char* key) {
    const json& a = get_array(at(j, key, path), path + "/" + key);
    if (a.size() != s.basis.size()) bad(path + "/" + key, "length differs from the basis");
    Vec v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(scalar_from_json(s.field, a[i], path + "/" + key + "/" + std::to_string(i)));
    return v;
  };
  s.unit = vec("unit");
  s.trace = vec("trace");
  const json& mul = get_array(at(j, "mul", path), path + "/mul");
  for (std::size_t i = 0; i < mul.size(); ++i) {
    std::string p = path + "/mul/" + std::to_string(i);
    if (!mul[i].is_array() || mul[i].size() != 4) bad(p, "expected [i, j, k, c]");
    s.mul.push_back({get_int(mul[i][0], p + "/0"), get_int(mul[i][1], p + "/1"), get_int(mul[i][2], p + "/2"),
                     scalar_from_json(s.field, mul[i][3], p + "/3")});
  }
  return FrobeniusAlgebra::build(s);
}

inline json to_json(const BraneSystem& sys) {
  json j;
  j["closed"] = to_json(sys.closed());
  j["branes"] = json::object();
  j["restrictions"] = json::object();
  for (const auto& [name, b] : sys.branes()) {
    j["branes"][name] = to_json(b.algebra);
    json rows = json::array();
    for (const auto& row : b.restriction) {
      json r = json::array();
      for (const auto& c : row) r.push_back(scalar_to_json(c));
      rows.push_back(r);
    }
    j["restrictions"][name] = rows;
  }
  return j;
}

inline BraneSystem system_from_json(const json& j, std::optional<Field> field = {}) {
  using namespace detail;
  FrobeniusAlgebra closed = algebra_from_json(at(j, "closed", ""), "/closed", field);
  Field f = closed.field();
  std::map<std::string, std::pair<FrobeniusAlgebra, Matrix>> branes;
  const json& bj = at(j, "branes", "");
  const json& rj = at(j, "restrictions", "");
  if (!bj.is_object()) bad("/branes", "expected an object");
  for (auto it = bj.begin(); it != bj.end(); ++it) {
    std::string p = "/branes/" + it.key();
    FrobeniusAlgebra A = algebra_from_json(it.value(), p, f);
    if (A.field() != f) fail(ErrorKind::FieldMismatch, p + ": field differs from the closed algebra");
    std::string rp = "/restrictions/" + it.key();
    const json& rows = get_array(at(rj, it.key().c_str(), "/restrictions"), rp);
    Matrix m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const json& row = get_array(rows[r], rp + "/" + std::to_string(r));
      Vec v;
      for (std::size_t c = 0; c < row.size(); ++c) v.push_back(scalar_from_json(f, row[c], rp + "/" + std::to_string(r) + "/" + std::to_string(c)));
      m.push_back(v);
    }
    branes.emplace(it.key(), std::make_pair(std::move(A), std::move(m)));
  }
  return BraneSystem(std::move(closed), std::move(branes));
}

// ---------------------------------------------------------------- graphs

inline json to_json(const ArcGraph& g) {
  json j;
  json s;
  s["genus"] = g.surface.genus;
  s["boundaries"] = json::array();
  for (const auto& b : g.surface.boundaries) {
    json pts = json::array();
    for (const auto& p : b) pts.push_back({{"label", label_to_json(p.label)}});
    s["boundaries"].push_back(pts);
  }
  s["punctures"] = json::array();
  for (const auto& p : g.surface.punctures) s["punctures"].push_back({{"id", p.id}, {"label", label_to_json(p.label)}});
  j["surface"] = s;
  j["arcs"] = json::array();
  for (const auto& a : g.arcs)
    j["arcs"].push_back({{"w1", a.end1.window + 1}, {"slot1", a.end1.slot}, {"w2", a.end2.window + 1}, {"slot2", a.end2.slot}, {"weight", a.weight}});
  j["regions"] = json::array();
  for (const auto& R : g.regions) {
    json r;
    r["genus"] = R.genus;
    r["punctures"] = R.punctures;
    r["cycles"] = json::array();
    for (const auto& c : R.cycles) {
      json cj = json::array();
      for (const auto& x : c) {
        if (x.is_piece) cj.push_back({{"piece", x.piece}});
        else cj.push_back({{"arc", x.arc}, {"side", x.side == Side::L ? "L" : "R"}});
      }
      r["cycles"].push_back(cj);
    }
    j["regions"].push_back(r);
  }
  if (g.io) {
    json in = json::array(), out = json::array();
    for (int w : g.io->in) in.push_back(w + 1);
    for (int w : g.io->out) out.push_back(w + 1);
    j["io"] = {{"in", in}, {"out", out}};
  }
  return j;
}

/// Parses and validates a graph file.
inline ArcGraph graph_from_json(const json& j) {
  using namespace detail;
  ArcGraph g;
  const json& s = at(j, "surface", "");
  g.surface.genus = get_int(at(s, "genus", "/surface"), "/surface/genus");
  const json& bs = get_array(at(s, "boundaries", "/surface"), "/surface/boundaries");
  for (std::size_t b = 0; b < bs.size(); ++b) {
    std::string p = "/surface/boundaries/" + std::to_string(b);
    std::vector<MarkedPoint> pts;
    for (std::size_t k = 0; k < get_array(bs[b], p).size(); ++k) {
      std::string q = p + "/" + std::to_string(k);
      pts.push_back(MarkedPoint{label_from_json(at(bs[b][k], "label", q), q + "/label")});
    }
    g.surface.boundaries.push_back(pts);
  }
  if (s.contains("punctures")) {
    const json& ps = get_array(s["punctures"], "/surface/punctures");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::string p = "/surface/punctures/" + std::to_string(i);
      g.surface.punctures.push_back(Puncture{get_string(at(ps[i], "id", p), p + "/id"), label_from_json(at(ps[i], "label", p), p + "/label")});
    }
  }
  const json& arcs = get_array(at(j, "arcs", ""), "/arcs");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    std::string p = "/arcs/" + std::to_string(i);
    Arc a;
    a.end1 = {get_int(at(arcs[i], "w1", p), p + "/w1") - 1, get_int(at(arcs[i], "slot1", p), p + "/slot1")};
    a.end2 = {get_int(at(arcs[i], "w2", p), p + "/w2") - 1, get_int(at(arcs[i], "slot2", p), p + "/slot2")};
    a.weight = arcs[i].contains("weight") ? get_int(arcs[i]["weight"], p + "/weight") : 1;
    g.arcs.push_back(a);
  }
  const json& regions = get_array(at(j, "regions", ""), "/regions");
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::string p = "/regions/" + std::to_string(r);
    Region R;
    R.genus = regions[r].contains("genus") ? get_int(regions[r]["genus"], p + "/genus") : 0;
    if (regions[r].contains("punctures"))
      for (std::size_t k = 0; k < get_array(regions[r]["punctures"], p + "/punctures").size(); ++k)
        R.punctures.push_back(get_string(regions[r]["punctures"][k], p + "/punctures/" + std::to_string(k)));
    const json& cycles = get_array(at(regions[r], "cycles", p), p + "/cycles");
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      std::string cp = p + "/cycles/" + std::to_string(c);
      Cycle cy;
      for (std::size_t k = 0; k < get_array(cycles[c], cp).size(); ++k) {
        std::string ip = cp + "/" + std::to_string(k);
        const json& x = cycles[c][k];
        if (x.is_object() && x.contains("piece")) {
          cy.push_back(CycleItem::of_piece(get_int(x["piece"], ip + "/piece")));
        } else {
          std::string side = get_string(at(x, "side", ip), ip + "/side");
          if (side != "L" && side != "R") bad(ip + "/side", "expected \"L\" or \"R\"");
          cy.push_back(CycleItem::of_side(get_int(at(x, "arc", ip), ip + "/arc"), side == "L" ? Side::L : Side::R));
        }
      }
      R.cycles.push_back(cy);
    }
    g.regions.push_back(R);
  }
  if (j.contains("io")) {
    IoPartition io;
    for (const auto& w : get_array(at(j["io"], "in", "/io"), "/io/in")) io.in.push_back(get_int(w, "/io/in") - 1);
    for (const auto& w : get_array(at(j["io"], "out", "/io"), "/io/out")) io.out.push_back(get_int(w, "/io/out") - 1);
    g.io = io;
  }
  // indices are checked here so that validate() only ever sees in-range data
  const int W = static_cast<int>(windows_of(g.surface).size());
  for (std::size_t i = 0; i < g.arcs.size(); ++i)
    for (const ArcEnd* e : {&g.arcs[i].end1, &g.arcs[i].end2})
      if (e->window < 0 || e->window >= W) fail(ErrorKind::IndexOutOfRange, "/arcs/" + std::to_string(i) + ": no window " + std::to_string(e->window + 1));
  if (g.io)
    for (const auto* ws : {&g.io->in, &g.io->out})
      for (int w : *ws)
        if (w < 0 || w >= W) fail(ErrorKind::IndexOutOfRange, "/io: no window " + std::to_string(w + 1));
  validate(g);
  return g;
}

// ---------------------------------------------------------------- bar elements

inline json to_json(const WindowLabel& l) {
  if (l.closed) return "closed";
  auto side = [](const BraneLabel& b) -> json { return b.size() == 1 ? json(*b.begin()) : label_to_json(b); };
  return {{"open", {side(l.S), side(l.T)}}};
}

inline WindowLabel window_label_from_json(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "closed") return WindowLabel::make_closed();
  const json& o = detail::at(j, "open", path);
  if (!o.is_array() || o.size() != 2) detail::bad(path + "/open", "expected [S, T]");
  return WindowLabel::make_open(label_from_json(o[0], path + "/open/0"), label_from_json(o[1], path + "/open/1"));
}

inline json to_json(const BraneSystem& sys, const BarElement& x) {
  BarSpace V(sys, x.label, x.n);
  json j;
  j["label"] = to_json(x.label);
  j["n"] = x.n;
  j["terms"] = json::array();
  for (const auto& [t, c] : x.terms) {
    json labels = json::array();
    for (std::size_t k = 0; k < t.size(); ++k) labels.push_back(V.factor(k).label(t[k]));
    j["terms"].push_back({labels, scalar_to_json(c)});
  }
  return j;
}

inline BarElement bar_from_json(const BraneSystem& sys, const json& j, const std::string& path = "") {
  using namespace detail;
  BarElement x;
  x.label = window_label_from_json(at(j, "label", path), path + "/label");
  x.n = get_int(at(j, "n", path), path + "/n");
  x.field = sys.field();
  BarSpace V(sys, x.label, x.n);
  const json& terms = get_array(at(j, "terms", path), path + "/terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string p = path + "/terms/" + std::to_string(i);
    if (!terms[i].is_array() || terms[i].size() != 2) bad(p, "expected [[labels...], coefficient]");
    const json& labels = get_array(terms[i][0], p + "/0");
    if (labels.size() != V.arity()) fail(ErrorKind::DegreeMismatch, p + ": expected " + std::to_string(V.arity()) + " tensor factors");
    Tuple t;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      std::string l = get_string(labels[k], p + "/0/" + std::to_string(k));
      int idx = -1;
      try {
        idx = V.factor(k).index_of(l);
      } catch (const Error&) {
      }
      if (idx < 0) bad(p + "/0/" + std::to_string(k), "no basis element '" + l + "'");
      t.push_back(idx);
    }
    x.add(t, scalar_from_json(sys.field(), terms[i][1], p + "/1"));
  }
  return x;
}

/// Inputs keyed "w1", "w2", ... (1-based windows).
inline json to_json(const BraneSystem& sys, const Inputs& in) {
  json j = json::object();
  for (const auto& [w, x] : in) j["w" + std::to_string(w + 1)] = to_json(sys, x);
  return j;
}

inline int parse_window(const std::string& s) {
  std::string t = !s.empty() && (s[0] == 'w' || s[0] == 'W') ? s.substr(1) : s;
  int w = 0;
  try {
    std::size_t used = 0;
    w = std::stoi(t, &used);
    if (used != t.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad window '" + s + "'");
  }
  if (w < 1) fail(ErrorKind::IndexOutOfRange, "windows are numbered from 1: '" + s + "'");
  return w - 1;
}

inline Inputs inputs_from_json(const BraneSystem& sys, const json& j) {
  if (!j.is_object()) detail::bad("", "expected an object of windows");
  Inputs in;
  for (auto it = j.begin(); it != j.end(); ++it) in[parse_window(it.key())] = bar_from_json(sys, it.value(), "/" + it.key());
  return in;
}

// ---------------------------------------------------------------- files

inline std::string dump(const json& j) { return j.dump(2, ' ', false) + "\n"; }

inline json read_json(const std::string& file) {
  std::ifstream f(file);
  if (!f) fail(ErrorKind::ParseError, file + ": cannot open");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, file + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline void write_text(const std::string& file, const std::string& text) {
  std::ofstream f(file, std::ios::binary);
  if (!f) fail(ErrorKind::UsageError, file + ": cannot write");
  f << text;
}

// ---------------------------------------------------------------- DOT

/// Windows as ordered nodes per boundary, arcs as weighted edges, regions as clusters.
inline std::string export_dot(const ArcGraph& g) {
  Layout L = compute_layout(g);
  std::ostringstream o;
  o << "graph arcgraph {\n  node [shape=box];\n";
  for (std::size_t b = 0; b < g.surface.boundaries.size(); ++b) {
    o << "  subgraph cluster_boundary" << b << " {\n    label=\"boundary " << b + 1 << "\";\n";
    std::vector<int> ws;
    for (std::size_t w = 0; w < L.windows.size(); ++w)
      if (L.windows[w].boundary == static_cast<int>(b)) ws.push_back(static_cast<int>(w));
    for (int w : ws) o << "    w" << w + 1 << " [label=\"w" << w + 1 << " " << L.windows[w].label.str() << "\"];\n";
    for (std::size_t k = 0; k + 1 < ws.size(); ++k) o << "    w" << ws[k] + 1 << " -- w" << ws[k + 1] + 1 << " [style=invis];\n";
    o << "  }\n";
  }
  for (std::size_t r = 0; r < g.regions.size(); ++r) {
    const Region& R = g.regions[r];
    o << "  subgraph cluster_region" << r << " {\n    label=\"region " << r << "\";\n";
    o << "    r" << r << " [shape=ellipse, label=\"g=" << R.genus << " cycles=" << R.cycles.size();
    for (const auto& p : R.punctures) o << " " << p;
    o << "\"];\n  }\n";
  }
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    const Arc& x = g.arcs[a];
    o << "  w" << x.end1.window + 1 << " -- w" << x.end2.window + 1 << " [label=\"a" << a << " (" << x.weight << ")\", weight=" << x.weight
      << "];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace arcop::io
