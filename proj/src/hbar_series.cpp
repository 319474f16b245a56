#include "bvjet/hbar_series.hpp"

#include <set>
#include <stdexcept>

namespace bvjet {

ExtendedFunctional HbarSeries::coefficient(int k) const {
  std::vector<EFTerm> out;
  for (const auto& t : value_.terms()) {
    if (t.coeff.hpow != k) continue;
    EFTerm nt = t;
    nt.coeff.hpow = 0;
    out.push_back(std::move(nt));
  }
  return ExtendedFunctional::fromTerms(value_.content(), std::move(out));
}

std::vector<int> HbarSeries::hbarPowers() const {
  std::set<int> powers;
  for (const auto& t : value_.terms()) powers.insert(t.coeff.hpow);
  return {powers.begin(), powers.end()};
}

ExtendedFunctional truncateBlocks(const ExtendedFunctional& f, int maxFactors) {
  std::vector<EFTerm> out;
  for (const auto& t : f.terms())
    if (static_cast<int>(t.factors.size()) <= maxFactors) out.push_back(t);
  return ExtendedFunctional::fromTerms(f.content(), std::move(out));
}

HbarSeries expSeries(const HbarSeries& F, int K) {
  int parity = 0;
  if (!F.value().isHomogeneous(&parity) || parity != 0)
    throw std::invalid_argument("exp requires an even functional");
  const int order = std::min(K, F.order());
  ExtendedFunctional sum = ExtendedFunctional::unit(F.value().content());
  ExtendedFunctional power = ExtendedFunctional::unit(F.value().content());
  Rational factorial = 1;
  for (int n = 1; n <= order; ++n) {
    power = power * F.value();
    factorial *= n;
    sum = sum + power.scaled(Scalar(1 / factorial));
  }
  return HbarSeries(sum, order);
}

HbarSeries seriesSchouten(const HbarSeries& a, const HbarSeries& b) {
  return HbarSeries(functionalSchouten(a.value(), b.value()), std::min(a.order(), b.order()));
}

HbarSeries seriesLaplacian(const HbarSeries& a) {
  return HbarSeries(functionalLaplacian(a.value()), a.order());
}

HbarSeries omega(const HbarSeries& S, const HbarSeries& O) {
  const Scalar minusIHbar(Rational(-1), 1, 1);
  return seriesSchouten(S, O) + seriesLaplacian(O).scaled(minusIHbar);
}

QmeReport checkQme(const HbarSeries& S) {
  QmeReport report;
  const Scalar half(Rational(1, 2));
  const Scalar minusIHbar(Rational(-1), 1, 1);
  ExtendedFunctional residual =
      functionalSchouten(S.value(), S.value()).scaled(half) +
      functionalLaplacian(S.value()).scaled(minusIHbar);
  report.residual = residual;
  HbarSeries rs(residual, S.order());
  report.pass = true;
  for (int k : rs.hbarPowers()) {
    const bool zero = functionalZero(restrictToDiagonal(rs.coefficient(k)));
    report.orders.push_back({k, zero});
    report.pass = report.pass && zero;
  }
  if (report.orders.empty()) report.orders.push_back({0, true});

  // Equivalent route: with F = (i/hbar) S, the expansion of Delta(exp F)
  // satisfies Delta(exp_K F) = (Delta F) exp_{K-1} F + (1/2)[[F,F]] exp_{K-2} F
  // exactly, so the master equation holds iff that right-hand side restricts
  // to zero through the truncation.
  int parity = 0;
  if (S.value().isHomogeneous(&parity) && parity == 0) {
    const int K = S.order();
    HbarSeries F = S.scaled(Scalar(Rational(1), 1, -1));
    ExtendedFunctional lhs = functionalLaplacian(expSeries(F, K).value());
    ExtendedFunctional rhs =
        functionalLaplacian(F.value()) * expSeries(F, K - 1).value() +
        functionalSchouten(F.value(), F.value()).scaled(half) * expSeries(F, K - 2).value();
    // the expansion identity is exact at every truncation order
    report.expRoutePass = functionalZero(restrictToDiagonal(lhs - rhs));
    if (report.pass) {
      // and given the master equation, Delta(exp(iS/hbar)) vanishes
      // order-by-order through the truncation
      HbarSeries L(lhs, K);
      for (int k : L.hbarPowers())
        report.expRoutePass = report.expRoutePass &&
                              functionalZero(restrictToDiagonal(L.coefficient(k)));
    }
  } else {
    report.expRoutePass = report.pass;
  }
  return report;
}

std::vector<PowerLemmaVerdict> powerLemmas(const LocalFunctional& F,
                                           const LocalFunctional& G, int maxN) {
  int parity = 1;
  if (!F.isHomogeneous(&parity) || parity != 0)
    throw std::invalid_argument("the power lemmas assume an even functional F");
  ExtendedFunctional Fe = ExtendedFunctional::fromLocal(F);
  ExtendedFunctional Ge = ExtendedFunctional::fromLocal(G);
  std::vector<PowerLemmaVerdict> out;
  for (int n = 1; n <= maxN; ++n) {
    PowerLemmaVerdict v;
    v.n = n;
    // [[G, F^n]] = n [[G,F]] F^{n-1}
    ExtendedFunctional lhs1 = functionalSchouten(Ge, Fe.pow(n));
    ExtendedFunctional rhs1 =
        (functionalSchouten(Ge, Fe) * Fe.pow(n - 1)).scaled(Scalar(Rational(n)));
    v.bracketHolds = functionalEqual(restrictToDiagonal(lhs1), restrictToDiagonal(rhs1));
    // Delta(F^n) = n (Delta F) F^{n-1} + (1/2) n (n-1) [[F,F]] F^{n-2}
    ExtendedFunctional lhs2 = functionalLaplacian(Fe.pow(n));
    ExtendedFunctional rhs2 =
        (functionalLaplacian(Fe) * Fe.pow(n - 1)).scaled(Scalar(Rational(n)));
    if (n >= 2)
      rhs2 = rhs2 + (functionalSchouten(Fe, Fe) * Fe.pow(n - 2))
                        .scaled(Scalar(Rational(n) * Rational(n - 1) / 2));
    v.laplacianHolds = functionalEqual(restrictToDiagonal(lhs2), restrictToDiagonal(rhs2));
    out.push_back(v);
  }
  return out;
}

}  // namespace bvjet
