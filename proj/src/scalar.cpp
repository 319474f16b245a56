#include "bvjet/scalar.hpp"

#include <sstream>

namespace bvjet {

std::string rationalStr(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string Scalar::str() const {
  std::ostringstream os;
  os << rationalStr(q);
  if (ipow == 1) os << "*i";
  if (hpow != 0) {
    os << "*hbar";
    if (hpow != 1) os << "^" << hpow;
  }
  return os.str();
}

}  // namespace bvjet
