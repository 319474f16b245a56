// Lie algebra structure constants with antisymmetry and Jacobi validation.
#pragma once

#include "bvjet/scalar.hpp"

#include <string>
#include <vector>

namespace bvjet {

class LieAlgebraSpec {
 public:
  /// entries: flat tensor f^a_{bc}, index (a*d + b)*d + c, all 0-based.
  LieAlgebraSpec(int dim, std::vector<Rational> entries);

  static LieAlgebraSpec abelian(int dim);
  static LieAlgebraSpec su2();
  /// Plain-text format: a `dim N` line, then `f a b c value` lines with
  /// 1-based indices; omitted entries are zero (antisymmetric completion).
  static LieAlgebraSpec parse(const std::string& text);
  static LieAlgebraSpec preset(const std::string& name);  // "su2", "abelian<d>"

  int dim() const { return dim_; }
  const Rational& f(int a, int b, int c) const {
    return entries_[static_cast<size_t>((a * dim_ + b) * dim_ + c)];
  }
  /// Trace over the first pair: sum_a f^a_{ac}.
  Rational trace(int c) const;

 private:
  void validate() const;
  int dim_;
  std::vector<Rational> entries_;
};

}  // namespace bvjet
