#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bvjet/grassmann.hpp"

#include <random>

using namespace bvjet;

namespace {

constexpr int K = 6;

GrassmannValue randomOdd(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GrassmannValue v(K);
  for (size_t m = 1; m < (size_t{1} << K); ++m)
    if (std::popcount(m) % 2 == 1 && std::popcount(m) <= 3) v.coeff(m) = d(rng);
  return v;
}

GrassmannValue randomEven(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GrassmannValue v(K);
  v.coeff(0) = d(rng);
  for (size_t m = 1; m < (size_t{1} << K); ++m)
    if (std::popcount(m) % 2 == 0 && std::popcount(m) <= 4) v.coeff(m) = 0.3 * d(rng);
  return v;
}

}  // namespace

TEST_CASE("generator relations") {
  auto t1 = GrassmannValue::generator(K, 0);
  auto t2 = GrassmannValue::generator(K, 1);
  CHECK((t1 * t1).maxAbs() == 0.0);
  CHECK((t1 * t2 + t2 * t1).maxAbs() == 0.0);
}

TEST_CASE("even/odd elements commute and anticommute per parity") {
  std::mt19937 rng(7);
  for (int it = 0; it < 20; ++it) {
    auto a = randomOdd(rng), b = randomOdd(rng);
    auto e = randomEven(rng);
    CHECK((a * b + b * a).maxAbs() < 1e-12);
    CHECK((a * e - e * a).maxAbs() < 1e-12);
    // associativity spot check
    CHECK(((a * b) * e).dist(a * (b * e)) < 1e-12);
  }
}

TEST_CASE("Taylor expansion of functions terminates and is consistent") {
  std::mt19937 rng(11);
  for (int it = 0; it < 10; ++it) {
    auto v = randomEven(rng);
    auto s = applyFunc(FuncKind::Sin, v);
    auto c = applyFunc(FuncKind::Cos, v);
    // sin^2 + cos^2 = 1 holds numerically in the algebra
    auto one = GrassmannValue::scalar(K, 1.0);
    CHECK((s * s + c * c).dist(one) < 1e-9);
    auto ep = applyFunc(FuncKind::Exp, v);
    auto em = applyFunc(FuncKind::Exp, -v);
    CHECK((ep * em).dist(one) < 1e-9);
  }
}

TEST_CASE("evaluation is a homomorphism") {
  auto fc = FieldContent::scalarPair();
  int q = fc->indexOf("q"), p = fc->indexOf("p");
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    GrassmannAssignment a;
    a.generators = K;
    JetVar vq{q, {}, 0}, vqx{q, MultiIndex::single(0), 0};
    JetVar vp{p, {}, 0}, vpx{p, MultiIndex::single(0), 0};
    a.even[vq] = d(rng);
    a.even[vqx] = d(rng);
    a.odd[vp] = randomOdd(rng);
    a.odd[vpx] = randomOdd(rng);

    GradedExpr eq = GradedExpr::variable(fc, q);
    GradedExpr eqx = GradedExpr::variable(fc, q, MultiIndex::single(0));
    GradedExpr ep = GradedExpr::variable(fc, p);
    GradedExpr epx = GradedExpr::variable(fc, p, MultiIndex::single(0));
    GradedExpr x = ep * eq + GradedExpr::func(FuncKind::Sin, eq) * epx;
    GradedExpr y = eqx * ep - GradedExpr::constant(Scalar(Rational(2)), fc) * eq;

    CHECK(evalGrassmann(x * y, a).dist(evalGrassmann(x, a) * evalGrassmann(y, a)) < 1e-9);
    CHECK(evalGrassmann(x + y, a).dist(evalGrassmann(x, a) + evalGrassmann(y, a)) < 1e-9);
  }
}

TEST_CASE("nilpotents evaluate to zero") {
  auto fc = FieldContent::scalarPair();
  int p = fc->indexOf("p");
  GradedExpr ep = GradedExpr::variable(fc, p);
  GradedExpr epx = GradedExpr::variable(fc, p, MultiIndex::single(0));
  std::mt19937 rng(5);
  GrassmannAssignment a;
  a.generators = K;
  a.odd[JetVar{p, {}, 0}] = randomOdd(rng);
  a.odd[JetVar{p, MultiIndex::single(0), 0}] = randomOdd(rng);
  CHECK(evalGrassmann(ep * ep, a).maxAbs() == 0.0);
  CHECK(evalGrassmann(ep * epx + epx * ep, a).maxAbs() < 1e-12);
}

TEST_CASE("odd variable assigned an even element is rejected") {
  auto fc = FieldContent::scalarPair();
  int p = fc->indexOf("p");
  GradedExpr ep = GradedExpr::variable(fc, p);
  GrassmannAssignment a;
  a.generators = K;
  std::mt19937 rng(3);
  a.odd[JetVar{p, {}, 0}] = randomEven(rng);
  CHECK_THROWS(evalGrassmann(ep, a));
}

TEST_CASE("left/right derivative sign relation cross-checked numerically") {
  auto fc = FieldContent::scalarPair();
  int q = fc->indexOf("q"), p = fc->indexOf("p");
  GradedExpr eq = GradedExpr::variable(fc, q);
  GradedExpr ep = GradedExpr::variable(fc, p);
  GradedExpr epx = GradedExpr::variable(fc, p, MultiIndex::single(0));
  JetVar vp{p, {}, 0};

  // e odd: p_x * p * q ... take e = p_x * q (odd), and e = p_x * p (even)
  std::vector<GradedExpr> exprs = {epx * eq, epx * ep, ep * eq * eq, epx * ep * eq};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (const auto& e : exprs) {
    GradedExpr left = e.partial(vp, Side::Left);
    GradedExpr expected = e.partial(vp, Side::Right);
    if (e.parity() % 2 == 0) expected = -expected;
    for (int it = 0; it < 100; ++it) {
      GrassmannAssignment a;
      a.generators = K;
      a.even[JetVar{q, {}, 0}] = d(rng);
      a.odd[vp] = randomOdd(rng);
      a.odd[JetVar{p, MultiIndex::single(0), 0}] = randomOdd(rng);
      CHECK(evalGrassmann(left, a).dist(evalGrassmann(expected, a)) < 1e-9);
    }
  }
}
