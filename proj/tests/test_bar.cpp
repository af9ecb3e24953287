#include <catch_amalgamated.hpp>

#include <random>

#include "arcop/algebra_fixtures.hpp"
#include "arcop/correlator_table.hpp"

using namespace arcop;
using namespace arcop::fixtures;

namespace {

std::vector<WindowLabel> labels_of(const BraneSystem& sys) {
  std::vector<WindowLabel> out{WindowLabel::make_closed()};
  for (const auto& [a, _] : sys.branes())
    for (const auto& [b, __] : sys.branes()) out.push_back(WindowLabel::make_open({a}, {b}));
  return out;
}

BarElement random_element(const BraneSystem& sys, const WindowLabel& l, int n, std::mt19937& rng) {
  BarSpace V(sys, l, n);
  BarElement x = bar_zero(l, n, sys.field());
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, V.size() - 1);
  for (int k = 0; k < 4; ++k) x.add(V.tuple(pick(rng)), Scalar(sys.field(), coef(rng)));
  return x;
}

BarElement el(const BraneSystem& sys, const WindowLabel& l, std::vector<std::string> names) {
  BarSpace V(sys, l, static_cast<int>(names.size()) - (l.closed ? 1 : 2));
  Tuple t;
  for (std::size_t k = 0; k < names.size(); ++k) t.push_back(V.factor(k).index_of(names[k]));
  return bar_basis(sys, l, t);
}

}  // namespace

TEST_CASE("d squared vanishes", "[bar]") {
  for (const auto& sys : {pt_system(), cp2cp1_system(), failing_i1_system(), pt_system(Field::F2)}) {
    for (const auto& l : labels_of(sys))
      for (int n = 2; n <= 4; ++n) {
        BarSpace V(sys, l, n);
        for (std::size_t f = 0; f < V.size(); ++f) {
          auto x = bar_basis(sys, l, V.tuple(f));
          REQUIRE(differential(sys, differential(sys, x)).is_zero());
        }
      }
  }
}

TEST_CASE("differential examples", "[bar]") {
  auto sys = pt_system();
  auto b = WindowLabel::make_open({"S"}, {"S"});
  REQUIRE(differential(sys, el(sys, b, {"1", "x", "1"})).is_zero());
  REQUIRE(differential(sys, el(sys, b, {"1", "1", "1"})).is_zero());
  auto c = WindowLabel::make_closed();
  REQUIRE(differential(sys, el(sys, c, {"x", "x", "x"})).is_zero());
  REQUIRE(differential(sys, el(sys, b, {"1", "1"})).n == -1);
  // d(1⊗x) closed = x - x = 0 ; d(x⊗1) = x - x = 0 ; d(1⊗1)= 0
  REQUIRE(differential(sys, el(sys, c, {"1", "x"})).is_zero());
  auto cp = cp2cp1_system();
  // d(h ⊗ h) = h2 - h2 = 0 ; d(1 ⊗ h ⊗ 1) over a line = t⊗1 - 1⊗t
  auto d = differential(cp, el(cp, b, {"1", "h", "1"}));
  BarElement expect = el(cp, b, {"t", "1"});
  expect.add(el(cp, b, {"1", "t"}), Scalar(Field::Q, -1L));
  REQUIRE(d == expect);
}

TEST_CASE("degeneracies and faces", "[bar]") {
  auto sys = cp2cp1_system();
  auto b = WindowLabel::make_open({"S"}, {"T"});
  REQUIRE(degeneracy(sys, 1, el(sys, b, {"1", "1"})) == el(sys, b, {"1", "1", "1"}));
  REQUIRE(degeneracy(sys, 1, el(sys, b, {"t", "h", "1"})) == el(sys, b, {"t", "1", "h", "1"}));
  REQUIRE_THROWS_AS(degeneracy(sys, 0, el(sys, b, {"t", "1"})), Error);
  std::mt19937 rng(11);
  for (const auto& l : labels_of(sys))
    for (int n = 0; n <= 3; ++n)
      for (int rep = 0; rep < 5; ++rep) {
        auto x = random_element(sys, l, n, rng);
        for (int i = 1; i <= n + 1; ++i) {
          auto s = degeneracy(sys, i, x);
          REQUIRE(face(sys, s, i) == x);
          REQUIRE(face(sys, s, i - 1) == x);
          if (l.closed) REQUIRE((s.is_zero() || !is_reduced(sys, s)));
        }
      }
}

TEST_CASE("involution", "[bar]") {
  auto sys = cp2cp1_system();
  auto st = WindowLabel::make_open({"S"}, {"T"});
  REQUIRE(involution(sys, el(sys, st, {"t", "1", "h", "1"})) == el(sys, st.bar(), {"1", "h", "1", "t"}));
  auto c = WindowLabel::make_closed();
  REQUIRE(involution(sys, el(sys, c, {"h2", "1", "h"})) == el(sys, c, {"h2", "h", "1"}));
  std::mt19937 rng(5);
  for (const auto& l : labels_of(sys))
    for (int n = 0; n <= 3; ++n) {
      auto x = random_element(sys, l, n, rng);
      REQUIRE(involution(sys, involution(sys, x)) == x);
      if (!l.closed && n >= 1) REQUIRE(involution(sys, differential(sys, x)) == [&] {
        // reversal sends d_i to d_{n-i}: a sign (-1)^n
        BarElement y = differential(sys, involution(sys, x));
        BarElement z = bar_zero(y.label, y.n, y.field);
        z.add(y, Scalar(Field::Q, n % 2 ? -1L : 1L));
        return z;
      }());
    }
}

TEST_CASE("Casimir", "[bar]") {
  auto sys = pt_system();
  SECTION("K, open, n=0") {
    auto c = casimir(sys, WindowLabel::make_open({"S"}, {"S"}), 0);
    REQUIRE(c.size() == 1);
    REQUIRE(c[0].coef.is_one());
  }
  SECTION("S2 closed n=0") {
    auto c = casimir(sys, WindowLabel::make_closed(), 0);
    REQUIRE(c.size() == 2);
    REQUIRE(c[0].left == Tuple{0});
    REQUIRE(c[0].right_bar == Tuple{1});
    REQUIRE(c[1].left == Tuple{1});
    REQUIRE(c[1].right_bar == Tuple{0});
  }
  SECTION("resolution of identity on B_0 and B_1") {
    for (const auto& s : {pt_system(), cp2cp1_system()})
      for (const auto& l : labels_of(s))
        for (int n = 0; n <= 1; ++n) {
          BarSpace V(s, l, n);
          BarSpace Vb(s, l.bar(), n);
          auto cas = casimir(s, l, n);
          for (std::size_t x = 0; x < V.size(); ++x)
            for (std::size_t y = 0; y < V.size(); ++y) {
              Scalar sum = Scalar::zero(s.field());
              for (const auto& t : cas)
                sum += V.metric(V.tuple(x), t.left) * t.coef * Vb.metric(t.right_bar, Vb.bar_tuple(V.tuple(y)));
              REQUIRE(sum == V.metric(V.tuple(x), V.tuple(y)));
            }
        }
  }
}

TEST_CASE("coboundary is the pairing adjoint of d", "[bar]") {
  auto sys = cp2cp1_system(Field::F2);
  for (const auto& l : labels_of(sys))
    for (int n = 0; n <= 2; ++n) {
      BarSpace V(sys, l, n), W(sys, l, n + 1);
      for (std::size_t i = 0; i < V.size(); ++i) {
        auto x = bar_basis(sys, l, V.tuple(i));
        auto dx = coboundary(sys, x);
        for (std::size_t j = 0; j < W.size(); ++j) {
          auto y = bar_basis(sys, l, W.tuple(j));
          REQUIRE(pairing(sys, dx, y) == pairing(sys, x, differential(sys, y)));
        }
      }
    }
}

namespace {

Correlator random_correlator(const BraneSystem& sys, std::vector<Slot> slots, std::mt19937& rng) {
  Correlator c(sys, slots);
  std::vector<std::size_t> sizes;
  for (std::size_t l = 0; l < slots.size(); ++l) sizes.push_back(c.space(l).size());
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int k = 0; k < 12; ++k) {
    SlotKey key;
    for (auto s : sizes) key.push_back(std::uniform_int_distribution<std::size_t>(0, s - 1)(rng));
    c.add(key, Scalar(sys.field(), coef(rng)));
  }
  return c;
}

}  // namespace

TEST_CASE("correlator composition", "[bar]") {
  auto sys = cp2cp1_system();
  auto closed = WindowLabel::make_closed();
  SECTION("annulus pairing is idempotent") {
    Correlator ann(sys, {{closed, 0}, {closed, 0}});
    const auto& A = sys.closed();
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j) ann.add({i, j}, A.metric()[i][j]);
    REQUIRE(compose_correlators(ann, ann, 1, 0) == ann);
    // dualizing one slot gives the identity map on B_0(closed)
    auto D = dualize(ann, 1);
    for (std::size_t i = 0; i < A.dim(); ++i) {
      auto x = D.apply(0, bar_basis(sys, closed, {int(i)})).as_element();
      REQUIRE(x == bar_basis(sys, closed, {int(i)}));
    }
  }
  SECTION("label mismatch gives zero") {
    auto st = WindowLabel::make_open({"S"}, {"T"});
    std::mt19937 rng(3);
    auto Y = random_correlator(sys, {{st, 1}, {closed, 0}}, rng);
    auto Yp = random_correlator(sys, {{st, 1}}, rng);
    REQUIRE(compose_correlators(Y, Yp, 0, 0).is_zero());
    REQUIRE_THROWS_AS(compose_correlators(Y, Yp, 1, 0), Error);
  }
  SECTION("associativity over disjoint slot pairs") {
    auto st = WindowLabel::make_open({"S"}, {"T"});
    std::mt19937 rng(9);
    for (int rep = 0; rep < 5; ++rep) {
      auto X = random_correlator(sys, {{st, 1}, {closed, 0}}, rng);
      auto Y = random_correlator(sys, {{st.bar(), 1}, {closed, 1}}, rng);
      auto Z = random_correlator(sys, {{closed, 1}, {closed, 0}}, rng);
      auto a = compose_correlators(compose_correlators(X, Y, 0, 0), Z, 1, 0);
      auto b = compose_correlators(X, compose_correlators(Y, Z, 1, 0), 0, 0);
      REQUIRE(a == b);
      // self composition agrees with composition
      auto XY = [&] {
        std::vector<Slot> s = X.slots();
        s.insert(s.end(), Y.slots().begin(), Y.slots().end());
        Correlator P(sys, s);
        for (const auto& [k1, v1] : X.table())
          for (const auto& [k2, v2] : Y.table()) {
            SlotKey k = k1;
            k.insert(k.end(), k2.begin(), k2.end());
            P.add(k, v1 * v2);
          }
        return P;
      }();
      REQUIRE(self_compose(XY, 0, 2) == compose_correlators(X, Y, 0, 0));
    }
  }
  SECTION("dualize then contract recovers Y") {
    std::mt19937 rng(21);
    auto st = WindowLabel::make_open({"S"}, {"T"});
    auto Y = random_correlator(sys, {{closed, 0}, {st, 1}}, rng);
    auto D = dualize(Y, 1);
    BarSpace V(sys, st, 1);
    for (std::size_t a = 0; a < sys.closed().dim(); ++a)
      for (std::size_t b = 0; b < V.size(); ++b) {
        auto x = D.apply(0, bar_basis(sys, closed, {int(a)})).as_element();
        auto bb = involution(sys, bar_basis(sys, st, V.tuple(b)));
        REQUIRE(pairing(sys, x, bb) == Y.at({a, b}));
      }
    REQUIRE(dualize(Correlator(sys, {{st, 1}}), 0).is_zero());
  }
}
