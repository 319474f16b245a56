// Multi-base-point functional calculus: functional derivatives over distinct
// base copies, symbolic delta couplings, the normalized functional
// BV-Laplacian and Schouten bracket, and diagonal restriction back to local
// functionals.
//
// A term is a graded word of symbols: density factors, each owning a private
// copy of the base and optionally carrying tagged derivative operators
// (-d/dy)^sigma, and test-shift slots created by functional derivatives.
// Couplings pair a field-shift slot with an antifield-shift slot; their
// orientation sign (+1 for <dq,dq+>, -1 reversed) is folded into the
// coefficient when the coupling is created, and a coupled pair counts as the
// even unit in all subsequent Koszul bookkeeping (the normalization
// ds^a(x) ds+_a(x) = 1). Delta couplings are purely symbolic label
// identifications, resolved only at diagonal restriction.
#pragma once

#include "bvjet/local_functional.hpp"

#include <string>
#include <vector>

namespace bvjet {

/// (-d/dy_slot)^sigma attached to one factor; becomes (-1)^|sigma| D_sigma
/// at the merged label on diagonal restriction.
struct EFTag {
  int slot = 0;
  MultiIndex sigma;
};

struct EFFactor {
  int base = 0;
  GradedExpr density;  // single-label expression at `base`
  std::vector<EFTag> tags;
  int parity = 0;
};

/// Test-shift slot ds^a(y) or ds+_a(y); `support` is the base copy of the
/// factor it was created from, `coupledWith` the partner slot or -1.
struct EFSlot {
  CoordKind kind = CoordKind::Field;
  int pair = 0;
  int parity = 0;
  int support = 0;
  int coupledWith = -1;
};

struct EFSymbol {
  bool isFactor = true;
  int index = 0;
};

struct EFTerm {
  Scalar coeff;
  std::vector<EFFactor> factors;
  std::vector<EFSlot> slots;
  std::vector<EFSymbol> word;  // every factor and slot exactly once, in order

  int parity() const;  // factors plus uncoupled slots, mod 2
};

class ExtendedFunctional {
 public:
  ExtendedFunctional() = default;
  explicit ExtendedFunctional(ContentPtr content) : content_(std::move(content)) {}

  static ExtendedFunctional fromLocal(const LocalFunctional& f);
  static ExtendedFunctional unit(ContentPtr content, Scalar s = Scalar(Rational(1)));

  const std::vector<EFTerm>& terms() const { return terms_; }
  const ContentPtr& content() const { return content_; }
  bool isStructurallyZero() const { return terms_.empty(); }
  bool isHomogeneous(int* parity = nullptr) const;

  ExtendedFunctional operator+(const ExtendedFunctional& o) const;
  ExtendedFunctional operator-(const ExtendedFunctional& o) const;
  ExtendedFunctional operator-() const;
  ExtendedFunctional operator*(const ExtendedFunctional& o) const;
  ExtendedFunctional scaled(const Scalar& s) const;
  ExtendedFunctional pow(int n) const;

  bool operator==(const ExtendedFunctional& o) const;

  std::string str() const;

  static ExtendedFunctional fromTerms(ContentPtr content, std::vector<EFTerm> terms);

 private:
  ContentPtr content_;
  std::vector<EFTerm> terms_;
};

/// Functional derivative with respect to the fiber coordinate `coord` at a
/// fresh base point; the new slot is transported to the given side of each
/// term. Produces tagged derivative operators and support identifications.
ExtendedFunctional functionalDerivative(const ExtendedFunctional& F, int coord, Side side);

/// The functional Schouten bracket: a right q-derivative of F coupled (+1)
/// against a left q+-derivative of G, plus a right q+-derivative of F
/// coupled (-1) against a left q-derivative of G, summed over fiber pairs.
ExtendedFunctional functionalSchouten(const ExtendedFunctional& F,
                                      const ExtendedFunctional& G);

/// The normalized functional BV-Laplacian: a left q+-derivative followed by
/// a left q-derivative at two fresh points, the two new slots coupled (+1).
ExtendedFunctional functionalLaplacian(const ExtendedFunctional& F);

/// Merges base labels along coupling and support identifications, applies
/// the tagged derivative operators to their attached factors, and returns
/// the resulting local functional. Uncoupled slots are an error unless
/// normalizeFree is set, in which case they are replaced by the unit.
LocalFunctional restrictToDiagonal(const ExtendedFunctional& F, bool normalizeFree = false);

}  // namespace bvjet
