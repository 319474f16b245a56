#include "bvjet/grassmann.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bvjet {

namespace {

// Koszul sign of multiplying basis monomials A*B (disjoint subsets):
// (-1)^{#{(a,b): a in A, b in B, a > b}}.
int basisSign(size_t a, size_t b) {
  int swaps = 0;
  size_t bb = b;
  while (bb) {
    size_t low = bb & (~bb + 1);
    swaps += std::popcount(a & ~(low | (low - 1)));
    bb &= bb - 1;
  }
  return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

bool GrassmannValue::isEven() const {
  for (size_t m = 0; m < coeff_.size(); ++m)
    if (std::popcount(m) % 2 == 1 && std::abs(coeff_[m]) > 0) return false;
  return true;
}

bool GrassmannValue::isOdd() const {
  for (size_t m = 0; m < coeff_.size(); ++m)
    if (std::popcount(m) % 2 == 0 && std::abs(coeff_[m]) > 0) return false;
  return true;
}

GrassmannValue GrassmannValue::operator+(const GrassmannValue& o) const {
  GrassmannValue r(k_);
  for (size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] + o.coeff_[m];
  return r;
}

GrassmannValue GrassmannValue::operator-(const GrassmannValue& o) const {
  GrassmannValue r(k_);
  for (size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] - o.coeff_[m];
  return r;
}

GrassmannValue GrassmannValue::operator*(const GrassmannValue& o) const {
  GrassmannValue r(k_);
  for (size_t a = 0; a < coeff_.size(); ++a) {
    if (coeff_[a] == C{}) continue;
    for (size_t b = 0; b < o.coeff_.size(); ++b) {
      if (o.coeff_[b] == C{} || (a & b)) continue;
      r.coeff_[a | b] += static_cast<double>(basisSign(a, b)) * coeff_[a] * o.coeff_[b];
    }
  }
  return r;
}

GrassmannValue GrassmannValue::operator*(C s) const {
  GrassmannValue r(k_);
  for (size_t m = 0; m < coeff_.size(); ++m) r.coeff_[m] = coeff_[m] * s;
  return r;
}

double GrassmannValue::maxAbs() const {
  double r = 0;
  for (const auto& c : coeff_) r = std::max(r, std::abs(c));
  return r;
}

double GrassmannValue::dist(const GrassmannValue& o) const {
  double r = 0;
  for (size_t m = 0; m < coeff_.size(); ++m) r = std::max(r, std::abs(coeff_[m] - o.coeff_[m]));
  return r;
}

GrassmannValue applyFunc(FuncKind kind, const GrassmannValue& v) {
  if (!v.isEven()) throw std::invalid_argument("sin/cos/exp of a non-even Grassmann value");
  const int k = v.generators();
  GrassmannValue soul = v;
  soul.coeff(0) = 0.0;
  const std::complex<double> b = v.body();
  // Derivative cycle at the body point.
  std::vector<std::complex<double>> derivs;
  switch (kind) {
    case FuncKind::Sin: derivs = {std::sin(b), std::cos(b), -std::sin(b), -std::cos(b)}; break;
    case FuncKind::Cos: derivs = {std::cos(b), -std::sin(b), -std::cos(b), std::sin(b)}; break;
    case FuncKind::Exp: derivs = {std::exp(b)}; break;
  }
  GrassmannValue result = GrassmannValue::scalar(k, derivs[0]);
  GrassmannValue power = GrassmannValue::scalar(k, 1.0);
  double factorial = 1.0;
  for (int n = 1; n <= k / 2 + 1; ++n) {
    power = power * soul;
    factorial *= n;
    if (power.maxAbs() == 0.0) break;
    result = result + power * (derivs[n % derivs.size()] / factorial);
  }
  return result;
}

GrassmannValue evalGrassmann(const GradedExpr& e, const GrassmannAssignment& a) {
  const int k = a.generators;
  GrassmannValue sum(k);
  const auto& content = e.content();
  for (const auto& m : e.monomials()) {
    std::complex<double> scalar(m.c.q.convert_to<double>(), 0.0);
    if (m.c.ipow == 1) scalar *= std::complex<double>(0.0, 1.0);
    scalar *= std::pow(a.hbar, m.c.hpow);
    GrassmannValue term = GrassmannValue::scalar(k, scalar);
    for (const auto& f : m.evens) {
      GrassmannValue base(k);
      if (f.isVar) {
        auto it = a.even.find(f.var);
        if (it == a.even.end()) {
          if (content && content->parity(f.var.coord) == 1)
            throw std::invalid_argument("odd variable assigned through the even map");
          throw std::invalid_argument("unassigned even variable " + std::to_string(f.var.coord));
        }
        base = GrassmannValue::scalar(k, it->second);
      } else {
        base = applyFunc(f.fn.kind, evalGrassmann(*f.fn.arg, a));
      }
      for (int p = 0; p < f.exp; ++p) term = term * base;
    }
    for (const auto& v : m.odds) {
      auto it = a.odd.find(v);
      if (it == a.odd.end()) throw std::invalid_argument("unassigned odd variable");
      if (!it->second.isOdd())
        throw std::invalid_argument("odd variable assigned an even Grassmann element");
      term = term * it->second;
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace bvjet
