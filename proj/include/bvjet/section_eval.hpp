// Numeric evaluation of local functionals on periodic 1-D sections, with odd
// components valued in the exterior algebra. Sections are trigonometric
// polynomials, so grid differentiation and quadrature are exact up to
// rounding (spectral accuracy).
#pragma once

#include "bvjet/grassmann.hpp"
#include "bvjet/local_functional.hpp"
#include "bvjet/random_expr.hpp"

#include <map>
#include <vector>

namespace bvjet {

/// Real trigonometric polynomial c0 + sum_k (a_k cos kx + b_k sin kx).
struct TrigPoly {
  double c0 = 0;
  std::vector<double> a, b;

  double eval(double x) const;
  TrigPoly derivative() const;
};

/// A periodic section of the BV bundle: one trig polynomial per even
/// coordinate; odd coordinates map to sums theta_j * f_j(x) over exterior
/// generators.
struct Section {
  std::map<int, TrigPoly> even;
  std::map<int, std::vector<std::pair<int, TrigPoly>>> odd;
  int generators = 6;
};

Section randomSection(RandomGen& gen, const ContentPtr& content, int modes, int generators);

/// \int_0^{2pi} f(j^infty s) dx by the trapezoid rule on gridN points.
GrassmannValue evalDensityOnSection(const GradedExpr& density, const Section& s, int gridN,
                                    double hbar = 1.0);
GrassmannValue evalFunctionalOnSection(const LocalFunctional& f, const Section& s, int gridN,
                                       double hbar = 1.0);

}  // namespace bvjet
