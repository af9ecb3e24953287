#include <catch_amalgamated.hpp>

#include "arcop/algebra_fixtures.hpp"

using namespace arcop;
using namespace arcop::fixtures;

namespace {

// ∫ e·a = trace of left multiplication by a
Scalar trace_of_left_mult(const FrobeniusAlgebra& A, std::size_t a) {
  Scalar t = Scalar::zero(A.field());
  for (std::size_t i = 0; i < A.dim(); ++i) t += A.product(a, i)[i];
  return t;
}

Vec vec_of(const FrobeniusAlgebra& A, std::vector<long> c) {
  Vec v;
  for (long x : c) v.push_back(Scalar(A.field(), x));
  return v;
}

}  // namespace

TEST_CASE("Euler element", "[algebra]") {
  SECTION("fixture values") {
    REQUIRE(fix_s2().euler() == vec_of(fix_s2(), {0, 2}));
    REQUIRE(fix_cp2().euler() == vec_of(fix_cp2(), {0, 0, 3}));
    REQUIRE(fix_k().euler() == vec_of(fix_k(), {1}));
  }
  SECTION("trace of multiplication oracle") {
    for (const auto& A : {fix_k(), fix_s2(), fix_cp2(), fix_dual_numbers()}) {
      for (std::size_t a = 0; a < A.dim(); ++a)
        REQUIRE(A.integrate(A.multiply(A.euler(), A.basis_vec(a))) == trace_of_left_mult(A, a));
    }
  }
  SECTION("Casimir of K") {
    auto c = fix_k().casimir();
    REQUIRE(c.size() == 1);
    REQUIRE(std::get<2>(c[0]).is_one());
  }
}

TEST_CASE("metric inverse and centrality", "[algebra]") {
  for (const auto& A : {fix_k(), fix_s2(), fix_cp2(), fix_cp1(Field::F2), fix_cp2(Field::F2)}) {
    REQUIRE(matmul(A.metric(), A.inverse_metric(), A.field()) == identity_matrix(A.field(), A.dim()));
    for (std::size_t i = 0; i < A.dim(); ++i)
      REQUIRE(A.multiply(A.euler(), A.basis_vec(i)) == A.multiply(A.basis_vec(i), A.euler()));
  }
}

TEST_CASE("build rejects invalid specs", "[algebra]") {
  AlgebraSpec s = fix_s2().spec();
  SECTION("zero trace") {
    s.trace = zero_vec(Field::Q, 2);
    try {
      FrobeniusAlgebra::build(s);
      FAIL("expected PairingDegenerate");
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::PairingDegenerate);
    }
  }
  SECTION("odd degree") {
    s.basis[1].degree = 1;
    REQUIRE_THROWS_MATCHES(FrobeniusAlgebra::build(s), Error, Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("OddDegreeBasis")));
  }
  SECTION("bad unit") {
    s.unit = vec_of(fix_s2(), {0, 1});
    REQUIRE_THROWS_MATCHES(FrobeniusAlgebra::build(s), Error, Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("NotUnital")));
  }
  SECTION("non-associative") {
    AlgebraSpec c = fix_cp2().spec();
    c.mul.push_back({1, 2, 2, Scalar(Field::Q, 1L)});  // h*h2 = h2 breaks (h h) h2 vs h (h h2)
    REQUIRE_THROWS_AS(FrobeniusAlgebra::build(c), Error);
  }
  SECTION("mixed fields") {
    s.trace[1] = Scalar(Field::F2, 1L);
    REQUIRE_THROWS_MATCHES(FrobeniusAlgebra::build(s), Error, Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("FieldMismatch")));
  }
}

TEST_CASE("adjoints", "[algebra]") {
  SECTION("point brane") {
    auto sys = pt_system();
    const auto& br = sys.brane("S");
    REQUIRE(sys.push("S", br.algebra.unit()) == vec_of(sys.closed(), {0, 1}));
    REQUIRE(is_zero(br.e_perp));
  }
  SECTION("line in CP2") {
    auto sys = cp2cp1_system();
    const auto& br = sys.brane("S");
    REQUIRE(sys.push("S", br.algebra.basis_vec(0)) == vec_of(sys.closed(), {0, 1, 0}));
    REQUIRE(sys.push("S", br.algebra.basis_vec(1)) == vec_of(sys.closed(), {0, 0, 1}));
    REQUIRE(br.e_perp == vec_of(br.algebra, {0, 1}));
  }
  SECTION("identity is self-adjoint") {
    auto A = fix_s2();
    auto id = identity_matrix(Field::Q, 2);
    REQUIRE(adjoint(A, A, id) == id);
  }
  SECTION("perturbing any entry breaks the defining identity") {
    auto sys = cp2cp1_system();
    const auto& adj = sys.brane("T").adjoint;
    REQUIRE(adjoint_identity_holds(sys, "T", adj));
    for (std::size_t i = 0; i < adj.size(); ++i)
      for (std::size_t j = 0; j < adj[i].size(); ++j) {
        Matrix m = adj;
        m[i][j] += Scalar::one(Field::Q);
        REQUIRE_FALSE(adjoint_identity_holds(sys, "T", m));
      }
  }
  SECTION("field mismatch") {
    REQUIRE_THROWS_AS(adjoint(fix_s2(), fix_k(Field::F2), Matrix{{Scalar(Field::Q, 1L), Scalar(Field::Q, 0L)}}), Error);
  }
}

TEST_CASE("condition checks", "[algebra]") {
  SECTION("point brane") {
    auto r = check_conditions(pt_system());
    REQUIRE(r.commutative_C);
    REQUIRE(r.euler_E);
    REQUIRE(r.self_intersection_I1);
    REQUIRE(r.self_intersection_I2);
    REQUIRE(r.projection_formula);
  }
  SECTION("line in CP2") {
    auto r = check_conditions(cp2cp1_system());
    REQUIRE((r.commutative_C && r.euler_E && r.self_intersection_I1 && r.self_intersection_I2 && r.projection_formula));
  }
  SECTION("(I) strictly stronger than (E)") {
    auto r = check_conditions(failing_i1_system());
    REQUIRE_FALSE(r.self_intersection_I1);
    REQUIRE(r.euler_E);
    REQUIRE(r.projection_formula);
  }
  SECTION("corrupted adjoint fails projection formula") {
    auto sys = cp2cp1_system();
    std::map<std::string, Matrix> bad;
    bad["S"] = sys.brane("S").adjoint;
    bad["S"][0][0] += Scalar::one(Field::Q);
    REQUIRE_FALSE(projection_formula_check(sys, &bad));
  }
  SECTION("F2 systems") {
    auto r = check_conditions(cp2cp1_system(Field::F2));
    REQUIRE(r.projection_formula);
    REQUIRE(r.self_intersection_I1);
  }
}
