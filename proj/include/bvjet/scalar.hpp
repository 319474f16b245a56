// Exact scalar ring Q[i, hbar, 1/hbar] used for all symbolic coefficients.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace bvjet {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// One monomial of the coefficient ring: q * i^ipow * hbar^hpow,
/// with i^2 = -1 folded into q so that ipow is always 0 or 1.
struct Scalar {
  Rational q{0};
  int ipow = 0;
  int hpow = 0;

  Scalar() = default;
  Scalar(long v) : q(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v, int ip = 0, int hp = 0) : q(std::move(v)), hpow(hp) {
    ip &= 3;
    if (ip >= 2) {
      q = -q;
      ip -= 2;
    }
    ipow = ip;
    if (q == 0) {
      ipow = 0;
      hpow = 0;
    }
  }

  static Scalar imaginary() { return Scalar(Rational(1), 1, 0); }
  static Scalar hbar(int power = 1) { return Scalar(Rational(1), 0, power); }

  bool isZero() const { return q == 0; }
  bool sameUnit(const Scalar& o) const { return ipow == o.ipow && hpow == o.hpow; }

  Scalar operator-() const { return Scalar(-q, ipow, hpow); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(q * o.q, ipow + o.ipow, hpow + o.hpow);
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.q == b.q && a.ipow == b.ipow && a.hpow == b.hpow;
  }

  std::string str() const;
};

std::string rationalStr(const Rational& r);

}  // namespace bvjet
