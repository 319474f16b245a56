// Yang-Mills BV action builders from Lie-algebra structure constants, and
// the master-equation verification commands.
#pragma once

#include "bvjet/extended_functional.hpp"
#include "bvjet/lie_algebra.hpp"

#include <string>
#include <vector>

namespace bvjet {

/// BV field content of a Yang-Mills model: gauge potentials A^a_i with odd
/// antifields, even antighosts paired with odd ghosts. Indices are raised
/// with the identity metric.
class YangMillsModel {
 public:
  YangMillsModel(int baseDim, LieAlgebraSpec algebra);

  int baseDim() const { return n_; }
  const LieAlgebraSpec& algebra() const { return algebra_; }
  const ContentPtr& content() const { return content_; }

  int A(int a, int i) const { return (a * n_ + i) * 2; }
  int Adagger(int a, int i) const { return (a * n_ + i) * 2 + 1; }
  int antighost(int a) const { return 2 * n_ * d() + 2 * a; }
  int ghost(int a) const { return 2 * n_ * d() + 2 * a + 1; }
  int d() const { return algebra_.dim(); }

 private:
  int n_;
  LieAlgebraSpec algebra_;
  ContentPtr content_;
};

/// Field strength F^a_{ij} = D_i A^a_j - D_j A^a_i + f^a_{bc} A^b_i A^c_j.
GradedExpr fieldStrength(const YangMillsModel& m, int a, int i, int j);

/// S = 1/4 \int F^a_{ij} F^{a,ij} + \int A^{i+}_a (D_i gh^a + f^a_{bc} A^b_i gh^c)
///     - 1/2 \int f^c_{ab} gh^a gh^b agh_c, as one even integral block.
LocalFunctional buildBVAction(const YangMillsModel& m);

struct GaugeCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Jet-space and functional BV-Laplacians of the action, with the
/// structure-constant trace contributions displayed per sector.
std::vector<GaugeCheck> verifyLaplacianZero(const YangMillsModel& m);

/// [[S,S]] = 0 modulo total divergences (the classical master equation).
std::vector<GaugeCheck> verifyClassicalMaster(const YangMillsModel& m);

}  // namespace bvjet
