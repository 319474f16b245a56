#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bvjet/hbar_series.hpp"
#include "bvjet/yang_mills.hpp"

using namespace bvjet;

namespace {

struct Ctx {
  ContentPtr fc = FieldContent::scalarPair();
  GradedExpr var(int coord, int order = 0) const {
    return GradedExpr::variable(fc, coord, order ? MultiIndex::single(0, order) : MultiIndex(), 0);
  }
};

}  // namespace

TEST_CASE("exponential series") {
  Ctx c;
  HbarSeries zero(ExtendedFunctional(c.fc), 3);
  CHECK(expSeries(zero, 3).value() == ExtendedFunctional::unit(c.fc));

  LocalFunctional B = LocalFunctional::block(c.var(0) * c.var(0, 1));
  HbarSeries F = HbarSeries::fromLocal(B, 2);
  ExtendedFunctional e2 = expSeries(F, 2).value();
  ExtendedFunctional expected = ExtendedFunctional::unit(c.fc) + ExtendedFunctional::fromLocal(B) +
                                ExtendedFunctional::fromLocal(B * B).scaled(Scalar(Rational(1, 2)));
  CHECK(e2 == expected);

  // odd functionals are rejected
  HbarSeries Odd = HbarSeries::fromLocal(LocalFunctional::block(c.var(1)), 2);
  CHECK_THROWS(expSeries(Odd, 2));
}

TEST_CASE("exponential Laplacian expansion holds through the truncation") {
  Ctx c;
  LocalFunctional B = LocalFunctional::block(c.var(1) * c.var(1, 1) + c.var(0) * c.var(0, 2));
  HbarSeries F = HbarSeries::fromLocal(B, 3);
  ExtendedFunctional lhs = functionalLaplacian(expSeries(F, 3).value());
  ExtendedFunctional rhs =
      functionalLaplacian(F.value()) * expSeries(F, 2).value() +
      functionalSchouten(F.value(), F.value()).scaled(Scalar(Rational(1, 2))) *
          expSeries(F, 1).value();
  CHECK(lhs == rhs);
}

TEST_CASE("hbar bookkeeping is exact and separable") {
  Ctx c;
  HbarSeries A = HbarSeries::fromLocal(LocalFunctional::block(c.var(0)), 3);
  HbarSeries S = A.scaled(Scalar(Rational(1), 0, 2)) + A.scaled(Scalar(Rational(3), 1, -1));
  auto powers = S.hbarPowers();
  REQUIRE(powers.size() == 2);
  CHECK(powers[0] == -1);
  CHECK(powers[1] == 2);
  CHECK(S.coefficient(2) == A.value());
  CHECK(S.coefficient(-1) == A.value().scaled(Scalar(Rational(3), 1, 0)));
}

TEST_CASE("power lemmas for n up to 5") {
  Ctx c;
  LocalFunctional F = LocalFunctional::block(c.var(1) * c.var(1, 1) + c.var(0) * c.var(0, 2));
  LocalFunctional G = LocalFunctional::block(c.var(1) * c.var(0, 1));
  auto verdicts = powerLemmas(F, G, 5);
  REQUIRE(verdicts.size() == 5);
  for (const auto& v : verdicts) {
    INFO("n = ", v.n);
    CHECK(v.bracketHolds);
    CHECK(v.laplacianHolds);
  }
  // odd F is rejected
  CHECK_THROWS(powerLemmas(G, F, 2));
}

TEST_CASE("quantum master equation reports") {
  Ctx c;
  // S depending on q only: both sides vanish separately
  QmeReport r1 = checkQme(HbarSeries::fromLocal(
      LocalFunctional::block(c.var(0, 1) * c.var(0, 1)), 3));
  CHECK(r1.pass);
  CHECK(r1.expRoutePass);

  // the 1-D toy S = \int q+ q dx has [[S,S]] = 0 but Delta S nonzero
  QmeReport r2 = checkQme(HbarSeries::fromLocal(
      LocalFunctional::block(c.var(1) * c.var(0)), 3));
  CHECK_FALSE(r2.pass);
  REQUIRE(r2.orders.size() == 1);
  CHECK(r2.orders[0].hbarPower == 1);  // the residual is -i hbar Delta S

  // Yang-Mills: tautological zero residual
  YangMillsModel m(2, LieAlgebraSpec::su2());
  QmeReport r3 = checkQme(HbarSeries::fromLocal(buildBVAction(m), 3));
  CHECK(r3.pass);
  CHECK(r3.expRoutePass);
}

TEST_CASE("Omega operator") {
  YangMillsModel m(1, LieAlgebraSpec::abelian(1));
  HbarSeries S = HbarSeries::fromLocal(buildBVAction(m), 3);
  HbarSeries one(ExtendedFunctional::unit(m.content()), 3);
  CHECK(omega(S, one).value().isStructurallyZero());

  auto var = [&](int coord, int order = 0) {
    return GradedExpr::variable(m.content(), coord,
                                order ? MultiIndex::single(0, order) : MultiIndex(), 0);
  };
  HbarSeries O = HbarSeries::fromLocal(
      LocalFunctional::block(var(m.A(0, 0), 1) * var(m.Adagger(0, 0))), 3);
  HbarSeries w = omega(S, O);
  CHECK_FALSE(w.value().isStructurallyZero());
  CHECK(functionalZero(restrictToDiagonal(omega(S, w).value())));
}
