// Exterior algebra on K generators with complex coefficients; the numeric
// oracle for graded sign identities.
#pragma once

#include "bvjet/graded_expr.hpp"

#include <complex>
#include <map>
#include <vector>

namespace bvjet {

class GrassmannValue {
 public:
  using C = std::complex<double>;

  explicit GrassmannValue(int generators = 6)
      : k_(generators), coeff_(size_t{1} << generators, C{0.0, 0.0}) {}

  static GrassmannValue scalar(int generators, C v) {
    GrassmannValue g(generators);
    g.coeff_[0] = v;
    return g;
  }
  static GrassmannValue generator(int generators, int i) {
    GrassmannValue g(generators);
    g.coeff_[size_t{1} << i] = 1.0;
    return g;
  }

  int generators() const { return k_; }
  C coeff(size_t mask) const { return coeff_[mask]; }
  C& coeff(size_t mask) { return coeff_[mask]; }
  C body() const { return coeff_[0]; }

  bool isEven() const;
  bool isOdd() const;

  GrassmannValue operator+(const GrassmannValue& o) const;
  GrassmannValue operator-(const GrassmannValue& o) const;
  GrassmannValue operator*(const GrassmannValue& o) const;
  GrassmannValue operator*(C s) const;
  GrassmannValue operator-() const { return *this * C{-1.0, 0.0}; }

  double maxAbs() const;
  double dist(const GrassmannValue& o) const;

 private:
  int k_;
  std::vector<C> coeff_;  // indexed by generator subset bitmask
};

/// sin/cos/exp of an even element: finite Taylor expansion around the body,
/// terminating because the soul is nilpotent.
GrassmannValue applyFunc(FuncKind kind, const GrassmannValue& v);

struct GrassmannAssignment {
  int generators = 6;
  std::map<JetVar, std::complex<double>> even;
  std::map<JetVar, GrassmannValue> odd;
  double hbar = 1.0;
};

/// Homomorphic evaluation of a normalized expression in the exterior algebra.
/// Every variable of e must be assigned; odd variables must map to odd
/// elements (rejected otherwise).
GrassmannValue evalGrassmann(const GradedExpr& e, const GrassmannAssignment& a);

}  // namespace bvjet
