#include "bvjet/section_eval.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bvjet {

double TrigPoly::eval(double x) const {
  double r = c0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    r += a[k] * std::cos(kk * x) + b[k] * std::sin(kk * x);
  }
  return r;
}

TrigPoly TrigPoly::derivative() const {
  TrigPoly d;
  d.a.resize(a.size());
  d.b.resize(b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    d.a[k] = kk * b[k];
    d.b[k] = -kk * a[k];
  }
  return d;
}

Section randomSection(RandomGen& gen, const ContentPtr& content, int modes, int generators) {
  auto coeff = [&] { return gen.uniform(-100, 100) / 100.0; };
  auto poly = [&] {
    TrigPoly p;
    p.c0 = coeff();
    p.a.resize(static_cast<size_t>(modes));
    p.b.resize(static_cast<size_t>(modes));
    for (int k = 0; k < modes; ++k) {
      p.a[static_cast<size_t>(k)] = coeff();
      p.b[static_cast<size_t>(k)] = coeff();
    }
    return p;
  };
  Section s;
  s.generators = generators;
  for (int c = 0; c < content->size(); ++c) {
    if (content->parity(c) == 0) {
      s.even[c] = poly();
    } else {
      std::vector<std::pair<int, TrigPoly>> comps;
      const int n = std::min(2, generators);
      for (int j = 0; j < n; ++j) comps.emplace_back(gen.uniform(0, generators - 1), poly());
      s.odd[c] = std::move(comps);
    }
  }
  return s;
}

GrassmannValue evalDensityOnSection(const GradedExpr& density, const Section& s, int gridN,
                                    double hbar) {
  if (density.content() && density.content()->baseDim() != 1)
    throw std::invalid_argument("section evaluation is one-dimensional");
  auto labels = density.labels();
  if (labels.size() > 1) throw std::invalid_argument("density must live at a single base copy");
  const int label = labels.empty() ? 0 : *labels.begin();

  std::set<JetVar> vars;
  density.collectVars(vars);
  // highest derivative order needed per coordinate
  std::map<int, int> maxOrder;
  for (const auto& v : vars) maxOrder[v.coord] = std::max(maxOrder[v.coord], v.sigma.order());
  // precompute derivative towers of the section components
  std::map<int, std::vector<TrigPoly>> evenTower;
  std::map<int, std::vector<std::vector<std::pair<int, TrigPoly>>>> oddTower;
  for (const auto& [coord, order] : maxOrder) {
    if (auto it = s.even.find(coord); it != s.even.end()) {
      std::vector<TrigPoly> tower{it->second};
      for (int k = 0; k < order; ++k) tower.push_back(tower.back().derivative());
      evenTower[coord] = std::move(tower);
    } else if (auto io = s.odd.find(coord); io != s.odd.end()) {
      std::vector<std::vector<std::pair<int, TrigPoly>>> tower{io->second};
      for (int k = 0; k < order; ++k) {
        auto next = tower.back();
        for (auto& [g, p] : next) p = p.derivative();
        tower.push_back(std::move(next));
      }
      oddTower[coord] = std::move(tower);
    } else {
      throw std::invalid_argument("section does not assign coordinate " +
                                  std::to_string(coord));
    }
  }

  GrassmannValue sum(s.generators);
  const double h = 2.0 * std::numbers::pi / gridN;
  for (int i = 0; i < gridN; ++i) {
    const double x = i * h;
    GrassmannAssignment a;
    a.generators = s.generators;
    a.hbar = hbar;
    for (const auto& v : vars) {
      const int k = v.sigma.order();
      if (auto it = evenTower.find(v.coord); it != evenTower.end()) {
        a.even[JetVar{v.coord, v.sigma, label}] = it->second[static_cast<size_t>(k)].eval(x);
      } else {
        GrassmannValue val(s.generators);
        for (const auto& [g, p] : oddTower.at(v.coord)[static_cast<size_t>(k)])
          val = val + GrassmannValue::generator(s.generators, g) * p.eval(x);
        a.odd[JetVar{v.coord, v.sigma, label}] = val;
      }
    }
    sum = sum + evalGrassmann(density, a);
  }
  return sum * (2.0 * std::numbers::pi / gridN);
}

GrassmannValue evalFunctionalOnSection(const LocalFunctional& f, const Section& s, int gridN,
                                       double hbar) {
  GrassmannValue total(s.generators);
  for (const auto& t : f.terms()) {
    std::complex<double> c(t.coeff.q.convert_to<double>(), 0.0);
    if (t.coeff.ipow == 1) c *= std::complex<double>(0.0, 1.0);
    c *= std::pow(hbar, t.coeff.hpow);
    GrassmannValue term = GrassmannValue::scalar(s.generators, c);
    for (const auto& b : t.blocks)
      term = term * evalDensityOnSection(b.density, s, gridN, hbar);
    total = total + term;
  }
  return total;
}

}  // namespace bvjet
