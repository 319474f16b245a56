// Local functionals: sums of products of integral blocks \int f d^n x,
// compared modulo total divergences, with the jet-space Schouten bracket and
// jet-space BV-Laplacian extended to products by the Leibniz rules.
#pragma once

#include "bvjet/graded_expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvjet {

/// One integral block. The density is parity-homogeneous and lives at its
/// own private copy of the base; the label is the block's position in the
/// owning term after canonicalization.
struct IntegralBlock {
  GradedExpr density;
  int parity = 0;
};

struct LFTerm {
  Scalar coeff;
  std::vector<IntegralBlock> blocks;

  int parity() const {
    int p = 0;
    for (const auto& b : blocks) p += b.parity;
    return p & 1;
  }
};

class LocalFunctional {
 public:
  LocalFunctional() = default;
  explicit LocalFunctional(ContentPtr content) : content_(std::move(content)) {}

  /// The unit functional (empty product) with the given coefficient.
  static LocalFunctional unit(ContentPtr content, Scalar s = Scalar(Rational(1)));
  /// A single integral block \int density d^n x. Non-homogeneous densities
  /// are split into parity-homogeneous blocks.
  static LocalFunctional block(const GradedExpr& density);

  bool isStructurallyZero() const { return terms_.empty(); }
  const std::vector<LFTerm>& terms() const { return terms_; }
  const ContentPtr& content() const { return content_; }

  /// True if every term has one parity; sets *parity accordingly.
  bool isHomogeneous(int* parity = nullptr) const;

  LocalFunctional operator+(const LocalFunctional& o) const;
  LocalFunctional operator-(const LocalFunctional& o) const;
  LocalFunctional operator-() const;
  LocalFunctional operator*(const LocalFunctional& o) const;
  LocalFunctional scaled(const Scalar& s) const;
  LocalFunctional pow(int n) const;

  bool operator==(const LocalFunctional& o) const;

  std::string str() const;

  static LocalFunctional fromTerms(ContentPtr content, std::vector<LFTerm> terms);

 private:
  ContentPtr content_;
  std::vector<LFTerm> terms_;  // canonical: blocks sorted, like terms merged
};

/// Variational Schouten bracket on local functionals; products are reduced by
/// the Leibniz rule, blocks by the coordinate formula
/// [[F,G]] = \int (dF/dq^a . dG/dq†_a - dF/dq†_a . dG/dq^a) d^n x.
LocalFunctional schoutenJet(const LocalFunctional& F, const LocalFunctional& G);

/// Jet-space BV-Laplacian; on blocks \int (d/dq^a)(dh/dq†_a) d^n x, on
/// products Delta(F G) = Delta(F) G + (-1)^pF [[F,G]] + (-1)^pF F Delta(G).
LocalFunctional laplacianJet(const LocalFunctional& F);

/// Equality of functionals modulo total divergences: the difference must
/// canonicalize to terms each killed by a trivial block. Sound, possibly
/// incomplete.
bool functionalEqual(const LocalFunctional& F, const LocalFunctional& G);
bool functionalZero(const LocalFunctional& F);

}  // namespace bvjet
