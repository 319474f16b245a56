// Quantum layer: truncated hbar-series functionals, exponential expansion
// identities, the quantum master equation and the Omega operator, all
// executed through the functional-calculus bracket and Laplacian. Every
// coefficient is exact; no floating point enters this module.
#pragma once

#include "bvjet/extended_functional.hpp"

#include <vector>

namespace bvjet {

/// A functional with hbar-graded scalar coefficients and a truncation order
/// recording through which power series expansions stay exact.
class HbarSeries {
 public:
  HbarSeries() = default;
  HbarSeries(ExtendedFunctional value, int order)
      : value_(std::move(value)), order_(order) {}
  static HbarSeries fromLocal(const LocalFunctional& f, int order) {
    return HbarSeries(ExtendedFunctional::fromLocal(f), order);
  }

  const ExtendedFunctional& value() const { return value_; }
  int order() const { return order_; }

  HbarSeries operator+(const HbarSeries& o) const {
    return HbarSeries(value_ + o.value_, std::min(order_, o.order_));
  }
  HbarSeries operator-(const HbarSeries& o) const {
    return HbarSeries(value_ - o.value_, std::min(order_, o.order_));
  }
  HbarSeries operator*(const HbarSeries& o) const {
    return HbarSeries(value_ * o.value_, std::min(order_, o.order_));
  }
  HbarSeries scaled(const Scalar& s) const { return HbarSeries(value_.scaled(s), order_); }

  /// Terms carrying exactly hbar^k, with the hbar power stripped.
  ExtendedFunctional coefficient(int k) const;
  std::vector<int> hbarPowers() const;

 private:
  ExtendedFunctional value_;
  int order_ = 3;
};

/// Drops terms with more than maxFactors integral factors (the block-count
/// grading along which exponential identities are exact).
ExtendedFunctional truncateBlocks(const ExtendedFunctional& f, int maxFactors);

/// exp(F) = sum_{n<=K} F^n/n! with graded products; F must be even.
HbarSeries expSeries(const HbarSeries& F, int K);

HbarSeries seriesSchouten(const HbarSeries& a, const HbarSeries& b);
HbarSeries seriesLaplacian(const HbarSeries& a);

/// Omega(O) = [[S, O]] - i hbar Delta O.
HbarSeries omega(const HbarSeries& S, const HbarSeries& O);

struct QmeOrderVerdict {
  int hbarPower = 0;
  bool zero = false;
};

struct QmeReport {
  ExtendedFunctional residual;  // (1/2)[[S,S]] - i hbar Delta S
  std::vector<QmeOrderVerdict> orders;
  bool pass = false;
  bool expRoutePass = false;  // Delta(exp F) = (Delta F) exp F + ... identity
};

/// Verifies the quantum master equation (1/2)[[S,S]] = i hbar Delta S
/// order-by-order in hbar, and the equivalent statement through the
/// exponential expansion at the series' truncation order.
QmeReport checkQme(const HbarSeries& S);

struct PowerLemmaVerdict {
  int n = 0;
  bool bracketHolds = false;    // [[G, F^n]] = n [[G,F]] F^{n-1}
  bool laplacianHolds = false;  // Delta(F^n) = n (Delta F) F^{n-1} + ...
};

/// Checks the two power lemmas for an even block F against G, n = 1..maxN,
/// expanding both sides independently through the functional calculus.
std::vector<PowerLemmaVerdict> powerLemmas(const LocalFunctional& F,
                                           const LocalFunctional& G, int maxN);

}  // namespace bvjet
