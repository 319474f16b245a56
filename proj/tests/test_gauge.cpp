#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bvjet/yang_mills.hpp"

using namespace bvjet;

TEST_CASE("algebra invariants are enforced at construction") {
  CHECK_NOTHROW(LieAlgebraSpec::su2());
  CHECK_NOTHROW(LieAlgebraSpec::abelian(4));
  // f^1_{12} = f^1_{21} = 1 violates antisymmetry
  std::vector<Rational> bad(8, 0);
  bad[0 * 4 + 1 * 2 + 0] = 0;
  bad[(0 * 2 + 0) * 2 + 1] = 1;
  bad[(0 * 2 + 1) * 2 + 0] = 1;
  CHECK_THROWS(LieAlgebraSpec(2, bad));
  // antisymmetric but not a Lie algebra: f^1_{23} = f^2_{23} = f^3_{12} = 1
  std::vector<Rational> j(27, 0);
  auto set = [&](int a, int b, int c, int v) {
    j[static_cast<size_t>((a * 3 + b) * 3 + c)] = v;
    j[static_cast<size_t>((a * 3 + c) * 3 + b)] = -v;
  };
  set(0, 1, 2, 1);
  set(1, 1, 2, 1);
  set(2, 0, 1, 1);
  CHECK_THROWS(LieAlgebraSpec(3, j));
}

TEST_CASE("algebra file parsing") {
  LieAlgebraSpec a = LieAlgebraSpec::parse("dim 3\nf 1 2 3 1\nf 2 3 1 1\nf 3 1 2 1\n");
  CHECK(a.dim() == 3);
  CHECK(a.f(0, 1, 2) == 1);
  CHECK(a.f(0, 2, 1) == -1);
  CHECK_THROWS(LieAlgebraSpec::parse("f 1 2 3 1\n"));          // missing dim
  CHECK_THROWS(LieAlgebraSpec::parse("dim 2\nf 1 2 9 1\n"));   // index range
  CHECK_THROWS(LieAlgebraSpec::parse("dim 2\nbogus\n"));
  CHECK(LieAlgebraSpec::preset("abelian5").dim() == 5);
  CHECK_THROWS(LieAlgebraSpec::preset("so3000"));
}

TEST_CASE("field strength components") {
  // abelian, n = 2: F^1_{12} = D_1 A^1_2 - D_2 A^1_1
  YangMillsModel ab(2, LieAlgebraSpec::abelian(1));
  GradedExpr F12 = fieldStrength(ab, 0, 0, 1);
  GradedExpr expected = GradedExpr::variable(ab.content(), ab.A(0, 1)).totalDerivative(0, 0) -
                        GradedExpr::variable(ab.content(), ab.A(0, 0)).totalDerivative(1, 0);
  CHECK(F12 == expected);
  // antisymmetry in the base indices
  YangMillsModel su(2, LieAlgebraSpec::su2());
  for (int a = 0; a < 3; ++a) CHECK(fieldStrength(su, a, 0, 1) == -fieldStrength(su, a, 1, 0));
  CHECK(fieldStrength(su, 0, 1, 1).isZero());
  // su2: F^3_{12} contains +A^1_1 A^2_2 - A^2_1 A^1_2
  auto A = [&](int a, int i) { return GradedExpr::variable(su.content(), su.A(a, i)); };
  GradedExpr cubicPart = fieldStrength(su, 2, 0, 1) - A(2, 1).totalDerivative(0, 0) +
                         A(2, 0).totalDerivative(1, 0);
  CHECK(cubicPart == A(0, 0) * A(1, 1) - A(1, 0) * A(0, 1));
}

TEST_CASE("BV action structure") {
  YangMillsModel ab(2, LieAlgebraSpec::abelian(1));
  LocalFunctional S = buildBVAction(ab);
  int p = 1;
  REQUIRE(S.isHomogeneous(&p));
  CHECK(p == 0);  // the action is even
  REQUIRE(S.terms().size() == 1);
  CHECK(S.terms().front().blocks.size() == 1);

  // ghost-free truncation: drop every monomial containing ghosts/antifields
  // leaves S0 = 1/4 F^2 terms only; for the abelian model the cubic pieces
  // are absent already
  GradedExpr s0 = GradedExpr::zero(ab.content());
  for (int a = 0; a < 1; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        GradedExpr F = fieldStrength(ab, a, i, j);
        s0 = s0 + (F * F).scaled(Scalar(Rational(1, 4)));
      }
  GradedExpr ghostPart = GradedExpr::variable(ab.content(), ab.Adagger(0, 0)) *
                             GradedExpr::variable(ab.content(), ab.ghost(0)).totalDerivative(0, 0) +
                         GradedExpr::variable(ab.content(), ab.Adagger(0, 1)) *
                             GradedExpr::variable(ab.content(), ab.ghost(0)).totalDerivative(1, 0);
  CHECK(S == LocalFunctional::block(s0 + ghostPart));
}

TEST_CASE("ghost-bilinear coefficient from the antighost derivative") {
  YangMillsModel su(2, LieAlgebraSpec::su2());
  LocalFunctional S = buildBVAction(su);
  const GradedExpr s =
      S.terms().front().blocks.front().density.scaled(S.terms().front().coeff);
  for (int cc = 0; cc < 3; ++cc) {
    GradedExpr d = s.euler(su.antighost(cc), Side::Right, 0);
    GradedExpr expected = GradedExpr::zero(su.content());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Rational& f = su.algebra().f(cc, a, b);
        if (f == 0) continue;
        expected = expected + (GradedExpr::variable(su.content(), su.ghost(a)) *
                               GradedExpr::variable(su.content(), su.ghost(b)))
                                  .scaled(Scalar(-f / 2));
      }
    CHECK(d == expected);
  }
}

TEST_CASE("Laplacian of the action vanishes with visible trace terms") {
  for (auto [alg, n] : std::vector<std::pair<std::string, int>>{
           {"abelian1", 2}, {"su2", 2}, {"su2", 4}}) {
    YangMillsModel m(n, LieAlgebraSpec::preset(alg));
    auto checks = verifyLaplacianZero(m);
    for (const auto& c : checks) {
      INFO(alg, " n=", n, " ", c.name, ": ", c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("classical master equation holds") {
  for (auto [alg, n] : std::vector<std::pair<std::string, int>>{
           {"abelian1", 2}, {"su2", 2}, {"su2", 4}}) {
    YangMillsModel m(n, LieAlgebraSpec::preset(alg));
    auto checks = verifyClassicalMaster(m);
    for (const auto& c : checks) {
      INFO(alg, " n=", n, ": ", c.detail);
      CHECK(c.pass);
    }
  }
}
