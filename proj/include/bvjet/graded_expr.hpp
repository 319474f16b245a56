// Canonical graded-commutative expressions in jet coordinates.
//
// A GradedExpr is a normalized sum of monomials. Each monomial is an exact
// scalar (Q[i,hbar,1/hbar]) times a product of even factors (powers of even
// jet variables or sin/cos/exp of even subexpressions) times an ordered list
// of distinct odd jet variables. Odd variables square to zero; reordering
// them multiplies the coefficient by the Koszul sign. Structural equality of
// normalized forms is the equality of the module.
#pragma once

#include "bvjet/field_content.hpp"
#include "bvjet/multi_index.hpp"
#include "bvjet/scalar.hpp"

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace bvjet {

struct JetVar {
  int coord = 0;
  MultiIndex sigma;
  int label = 0;

  std::strong_ordering operator<=>(const JetVar&) const = default;
  bool operator==(const JetVar&) const = default;
};

enum class FuncKind : uint8_t { Sin, Cos, Exp };
enum class Side : uint8_t { Left, Right };

class GradedExpr;

struct FuncAtom {
  FuncKind kind = FuncKind::Sin;
  std::shared_ptr<const GradedExpr> arg;  // normalized even expression
};
std::strong_ordering compare(const FuncAtom& a, const FuncAtom& b);

/// Power of an even jet variable, or of an elementary-function factor.
struct EvenFactor {
  bool isVar = true;
  JetVar var;
  FuncAtom fn;
  int exp = 1;
};
std::strong_ordering compare(const EvenFactor& a, const EvenFactor& b);

struct Monomial {
  Scalar c;
  std::vector<EvenFactor> evens;  // sorted by compare()
  std::vector<JetVar> odds;       // strictly increasing

  int parity() const { return static_cast<int>(odds.size()) & 1; }
  bool isScalar() const { return evens.empty() && odds.empty(); }
};
/// Orders monomials by structure (coefficient's rational part excluded).
std::strong_ordering compareKey(const Monomial& a, const Monomial& b);

class GradedExpr {
 public:
  GradedExpr() = default;
  static GradedExpr zero(ContentPtr content = nullptr) { return GradedExpr(std::move(content), {}); }
  static GradedExpr constant(Scalar s, ContentPtr content = nullptr);
  static GradedExpr variable(ContentPtr content, int coord, MultiIndex sigma = {}, int label = 0);
  static GradedExpr func(FuncKind kind, const GradedExpr& arg);

  bool isZero() const { return mons_.empty(); }
  const std::vector<Monomial>& monomials() const { return mons_; }
  const ContentPtr& content() const { return content_; }

  /// True if all monomials share one parity; sets *parity if so.
  bool isHomogeneous(int* parity = nullptr) const;
  /// Parity of a homogeneous expression (0 for the zero expression).
  int parity() const;

  GradedExpr operator+(const GradedExpr& o) const;
  GradedExpr operator-(const GradedExpr& o) const;
  GradedExpr operator*(const GradedExpr& o) const;
  GradedExpr operator-() const;
  GradedExpr scaled(const Scalar& s) const;
  GradedExpr pow(int n) const;  // n >= 0, base must be even

  GradedExpr totalDerivative(int dir, int label) const;
  GradedExpr totalDerivative(const MultiIndex& sigma, int label) const;
  /// Graded partial derivative with the variation extracted to the given side.
  GradedExpr partial(const JetVar& v, Side side) const;
  /// Euler operator: sum over sigma of (-1)^|sigma| D_sigma d/d(coord,sigma).
  GradedExpr euler(int coord, Side side, int label) const;

  std::pair<GradedExpr, GradedExpr> paritySplit() const;

  std::set<int> labels() const;
  GradedExpr relabeled(const std::map<int, int>& labelMap) const;
  GradedExpr relabeledAll(int label) const;
  /// Jet variables occurring anywhere, including inside function arguments.
  void collectVars(std::set<JetVar>& out) const;
  int maxSigmaOrder() const;

  /// Value at the zero section: every jet variable set to 0; sin(0), cos(0),
  /// exp(0) folded. Function atoms with nonzero constant arguments remain
  /// symbolic.
  GradedExpr atZeroSection() const;

  bool operator==(const GradedExpr& o) const;
  std::strong_ordering operator<=>(const GradedExpr& o) const;

  std::string str() const;

  /// Assembles an expression from arbitrary monomials (normalizes: sorts odd
  /// factors with Koszul signs, merges like terms, drops zeros).
  static GradedExpr fromMonomials(ContentPtr content, std::vector<Monomial> raw);

 private:
  GradedExpr(ContentPtr content, std::vector<Monomial> mons)
      : content_(std::move(content)), mons_(std::move(mons)) {}

  ContentPtr content_;
  std::vector<Monomial> mons_;  // sorted by compareKey, coefficients nonzero
};

Monomial mulMonomials(const Monomial& a, const Monomial& b, bool& zero);
ContentPtr mergedContent(const ContentPtr& a, const ContentPtr& b);

/// Decides whether the x-independent density f integrates to zero over the
/// base: true iff every Euler derivative of f vanishes and f is zero at the
/// zero section (total divergences plus zero constant term). The label is
/// taken from the density itself, which must live at a single base copy.
bool isTrivialDensity(const GradedExpr& f);

}  // namespace bvjet
