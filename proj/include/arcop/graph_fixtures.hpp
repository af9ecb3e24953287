#pragma once

#include <optional>

#include "arcop/surface.hpp"

namespace arcop::fixtures {

inline std::vector<MarkedPoint> labelled(const std::vector<std::string>& labels) {
  std::vector<MarkedPoint> out;
  for (const auto& l : labels) out.push_back(l.empty() ? MarkedPoint{} : MarkedPoint{{l}});
  return out;
}

/// Disk with points T, S, U; arcs w1-w3 and w2-w3.
inline ArcGraph graph_tri(int wt1 = 1, int wt2 = 1, const std::vector<std::string>& labels = {"T", "S", "U"}) {
  ArcGraph g;
  g.surface.boundaries = {labelled(labels)};
  g.arcs = {Arc{{0, 0}, {2, 1}, wt1}, Arc{{1, 0}, {2, 0}, wt2}};
  assign_regions(g);
  return g;
}

/// Disk with two points labelled a, b and one arc between the two windows.
inline ArcGraph strip(const char* a = "S", const char* b = "S", int wt = 1) {
  ArcGraph g;
  g.surface.boundaries = {points({{a}, {b}})};
  g.arcs = {Arc{{0, 0}, {1, 0}, wt}};
  assign_regions(g);
  return g;
}

/// Annulus with two closed windows joined by one arc.
inline ArcGraph closed_annulus(int wt = 1) {
  ArcGraph g;
  g.surface.boundaries = {points({{}}), points({{}})};
  g.arcs = {Arc{{0, 0}, {1, 0}, wt}};
  assign_regions(g);
  return g;
}

}  // namespace arcop::fixtures

namespace arcop::fixtures {

/// Annulus: outer boundary a single point (lone open window w1), inner closed window w2.
inline ArcGraph lone_annulus(int wt = 1, const char* label = "S") {
  ArcGraph g;
  g.surface.boundaries = {labelled({label}), points({{}})};
  g.arcs = {Arc{{0, 0}, {1, 0}, wt}};
  assign_regions(g);
  return g;
}

/// Sphere with three closed windows, arcs w1-w3 and w2-w3.
inline ArcGraph pants(int a = 1, int b = 1) {
  ArcGraph g;
  g.surface.boundaries = {points({{}}), points({{}}), points({{}})};
  g.arcs = {Arc{{0, 0}, {2, 1}, a}, Arc{{1, 0}, {2, 0}, b}};
  assign_regions(g);
  return g;
}

/// Annulus, two points (S, T) on each boundary; arcs w1-w3 and w2-w4.
inline ArcGraph two_point_annulus(int a = 1, int b = 1) {
  ArcGraph g;
  g.surface.boundaries = {labelled({"S", "T"}), labelled({"S", "T"})};
  g.arcs = {Arc{{0, 0}, {2, 0}, a}, Arc{{1, 0}, {3, 0}, b}};
  assign_regions(g);
  return g;
}

/// Disk with points labelled as given; one arc from each of w1..w(n-1) to wn.
inline ArcGraph fan(const std::vector<std::string>& labels, const std::vector<int>& weights) {
  ArcGraph g;
  g.surface.boundaries = {labelled(labels)};
  int n = static_cast<int>(labels.size());
  for (int i = 0; i < n - 1; ++i) g.arcs.push_back(Arc{{i, 0}, {n - 1, n - 2 - i}, weights[i]});
  assign_regions(g);
  return g;
}

/// Pants with one arc between each pair of boundaries; every window has weight 2.
inline ArcGraph theta_pants() {
  ArcGraph g;
  g.surface.boundaries = {points({{}}), points({{}}), points({{}})};
  g.arcs = {Arc{{0, 0}, {1, 0}, 1}, Arc{{0, 1}, {2, 0}, 1}, Arc{{1, 1}, {2, 1}, 1}};
  assign_regions(g);
  return g;
}

/// Disk T,S,T,U,T,T: windows 1,2 meet at S and 3,4 at U, in different regions; window weights at most 3.
inline ArcGraph double_consecutive() {
  ArcGraph g;
  g.surface.boundaries = {labelled({"T", "S", "T", "U", "T", "T"})};
  g.arcs = {Arc{{0, 0}, {5, 2}, 1}, Arc{{1, 0}, {2, 0}, 1}, Arc{{2, 1}, {5, 1}, 1}, Arc{{3, 0}, {4, 0}, 2}, Arc{{4, 1}, {5, 0}, 1}};
  assign_regions(g);
  return g;
}

/// One local gluing situation; `b` empty means self-gluing of wa and wb on `a`.
struct CatalogCase {
  std::string name;
  ArcGraph a;
  int wa = 0;
  std::optional<ArcGraph> b;
  int wb = 0;
  std::vector<std::pair<int, int>> then_self;  // further self-gluings, windows of the running result
  bool expect_nonzero = true;                  // false when degree counting forces zero in both systems
};

/// Local gluing catalog covering open, closed, lone-window and self-gluing cases.
inline std::vector<CatalogCase> gluing_catalog() {
  std::vector<CatalogCase> c;
  c.push_back({"a: open strips, interval pieces", strip("S", "T", 2), 1, strip("S", "T", 2), 0, {}});
  c.push_back({"b: closed annuli", closed_annulus(2), 1, closed_annulus(2), 0, {}});
  c.push_back({"c: triangles", graph_tri(1, 1), 2, graph_tri(2, 1, {"T", "U", "S"}), 0, {}});
  c.push_back({"c: triangles, weight 3", graph_tri(1, 2), 2, graph_tri(1, 2, {"U", "S", "T"}), 2, {}});
  c.push_back({"d: two lone windows", lone_annulus(2), 0, lone_annulus(2), 0, {}});
  c.push_back({"e: lone window to interval", lone_annulus(2), 0, strip("S", "S", 2), 0, {}});
  c.push_back({"e: interval to lone window", fan({"S", "T", "S"}, {1, 1}), 2, lone_annulus(2), 0, {}});
  c.push_back({"f: closed self-gluing", pants(), 0, std::nullopt, 1, {}});
  c.push_back({"f: closed self-gluing, weight 2", theta_pants(), 0, std::nullopt, 1, {}});
  c.push_back({"f: open self-gluing across boundaries", two_point_annulus(), 0, std::nullopt, 3, {}, false});
  c.push_back({"g: consecutive windows", fan({"T", "S", "T"}, {1, 1}), 0, std::nullopt, 1, {}});
  c.push_back({"g: double consecutive", double_consecutive(), 0, std::nullopt, 1, {{0, 1}}});
  return c;
}

}  // namespace arcop::fixtures
