#include "bvjet/graded_expr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bvjet {

namespace {

std::strong_ordering compareExprPtr(const std::shared_ptr<const GradedExpr>& a,
                                    const std::shared_ptr<const GradedExpr>& b) {
  if (a == b) return std::strong_ordering::equal;
  return *a <=> *b;
}

std::strong_ordering compareRational(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// Sorts odd variables in place; returns the Koszul sign, or 0 if a variable
/// repeats (odd squares vanish).
int sortOdds(std::vector<JetVar>& odds) {
  int sign = 1;
  for (size_t i = 1; i < odds.size(); ++i) {
    JetVar v = odds[i];
    size_t j = i;
    while (j > 0 && v < odds[j - 1]) {
      odds[j] = odds[j - 1];
      --j;
      sign = -sign;
    }
    odds[j] = std::move(v);
  }
  for (size_t i = 1; i < odds.size(); ++i)
    if (odds[i] == odds[i - 1]) return 0;
  return sign;
}

// Compares even factors by their base only (variable or function atom),
// ignoring the exponent; each base occurs once per normalized monomial.
std::strong_ordering compareBase(const EvenFactor& a, const EvenFactor& b) {
  if (auto c = (a.isVar ? 0 : 1) <=> (b.isVar ? 0 : 1); c != 0) return c;
  if (a.isVar) return a.var <=> b.var;
  return compare(a.fn, b.fn);
}

void mergeEvens(std::vector<EvenFactor>& dst, const std::vector<EvenFactor>& src) {
  for (const auto& f : src) {
    auto it = std::lower_bound(dst.begin(), dst.end(), f,
                               [](const EvenFactor& a, const EvenFactor& b) {
                                 return compareBase(a, b) == std::strong_ordering::less;
                               });
    if (it != dst.end() && compareBase(*it, f) == std::strong_ordering::equal)
      it->exp += f.exp;
    else
      dst.insert(it, f);
  }
}

int oddParityOf(const std::vector<Monomial>& mons) {
  int p = mons.empty() ? 0 : mons.front().parity();
  return p;
}

}  // namespace

std::strong_ordering compare(const FuncAtom& a, const FuncAtom& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  return compareExprPtr(a.arg, b.arg);
}

std::strong_ordering compare(const EvenFactor& a, const EvenFactor& b) {
  if (auto c = (a.isVar ? 0 : 1) <=> (b.isVar ? 0 : 1); c != 0) return c;
  if (a.isVar) {
    if (auto c = a.var <=> b.var; c != 0) return c;
  } else {
    if (auto c = compare(a.fn, b.fn); c != 0) return c;
  }
  return a.exp <=> b.exp;
}

std::strong_ordering compareKey(const Monomial& a, const Monomial& b) {
  if (auto c = a.odds <=> b.odds; c != 0) return c;
  if (auto c = a.evens.size() <=> b.evens.size(); c != 0) return c;
  for (size_t i = 0; i < a.evens.size(); ++i)
    if (auto c = compare(a.evens[i], b.evens[i]); c != 0) return c;
  if (auto c = a.c.ipow <=> b.c.ipow; c != 0) return c;
  return a.c.hpow <=> b.c.hpow;
}

ContentPtr mergedContent(const ContentPtr& a, const ContentPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a != b) throw std::invalid_argument("expressions over different field contents");
  return a;
}

GradedExpr GradedExpr::fromMonomials(ContentPtr content, std::vector<Monomial> raw) {
  std::vector<Monomial> out;
  for (auto& m : raw) {
    if (m.c.isZero()) continue;
    int sign = sortOdds(m.odds);
    if (sign == 0) continue;
    if (sign < 0) m.c.q = -m.c.q;
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return compareKey(a, b) < 0; });
  std::vector<Monomial> merged;
  for (auto& m : out) {
    if (!merged.empty() && compareKey(merged.back(), m) == 0)
      merged.back().c.q += m.c.q;
    else
      merged.push_back(std::move(m));
  }
  std::erase_if(merged, [](const Monomial& m) { return m.c.isZero(); });
  return GradedExpr(std::move(content), std::move(merged));
}

GradedExpr GradedExpr::constant(Scalar s, ContentPtr content) {
  if (s.isZero()) return zero(std::move(content));
  Monomial m;
  m.c = std::move(s);
  return GradedExpr(std::move(content), {std::move(m)});
}

GradedExpr GradedExpr::variable(ContentPtr content, int coord, MultiIndex sigma, int label) {
  if (!content || coord < 0 || coord >= content->size())
    throw std::invalid_argument("variable: bad coordinate index");
  Monomial m;
  m.c = Scalar(Rational(1));
  JetVar v{coord, std::move(sigma), label};
  if (content->parity(coord) == 0)
    m.evens.push_back(EvenFactor{true, std::move(v), {}, 1});
  else
    m.odds.push_back(std::move(v));
  return GradedExpr(std::move(content), {std::move(m)});
}

GradedExpr GradedExpr::func(FuncKind kind, const GradedExpr& arg) {
  int p = 0;
  if (!arg.isHomogeneous(&p) || p != 0)
    throw std::invalid_argument("sin/cos/exp require an even argument");
  // Constant folding at rational arguments 0: sin 0 = 0, cos 0 = exp 0 = 1.
  if (arg.isZero())
    return kind == FuncKind::Sin ? zero(arg.content_)
                                 : constant(Scalar(Rational(1)), arg.content_);
  Monomial m;
  m.c = Scalar(Rational(1));
  m.evens.push_back(EvenFactor{
      false, {}, FuncAtom{kind, std::make_shared<const GradedExpr>(arg)}, 1});
  return GradedExpr(arg.content_, {std::move(m)});
}

bool GradedExpr::isHomogeneous(int* parity) const {
  if (mons_.empty()) {
    if (parity) *parity = 0;
    return true;
  }
  int p = mons_.front().parity();
  for (const auto& m : mons_)
    if (m.parity() != p) return false;
  if (parity) *parity = p;
  return true;
}

int GradedExpr::parity() const {
  int p = 0;
  if (!isHomogeneous(&p)) throw std::logic_error("expression is not parity-homogeneous");
  return p;
}

GradedExpr GradedExpr::operator+(const GradedExpr& o) const {
  std::vector<Monomial> all = mons_;
  all.insert(all.end(), o.mons_.begin(), o.mons_.end());
  return fromMonomials(mergedContent(content_, o.content_), std::move(all));
}

GradedExpr GradedExpr::operator-() const {
  std::vector<Monomial> all = mons_;
  for (auto& m : all) m.c.q = -m.c.q;
  return GradedExpr(content_, std::move(all));
}

GradedExpr GradedExpr::operator-(const GradedExpr& o) const { return *this + (-o); }

Monomial mulMonomials(const Monomial& a, const Monomial& b, bool& zero) {
  zero = false;
  Monomial r;
  r.c = a.c * b.c;
  if (r.c.isZero()) {
    zero = true;
    return r;
  }
  r.evens = a.evens;
  mergeEvens(r.evens, b.evens);
  r.odds = a.odds;
  r.odds.insert(r.odds.end(), b.odds.begin(), b.odds.end());
  int sign = sortOdds(r.odds);
  if (sign == 0) {
    zero = true;
    return r;
  }
  if (sign < 0) r.c.q = -r.c.q;
  return r;
}

GradedExpr GradedExpr::operator*(const GradedExpr& o) const {
  std::vector<Monomial> out;
  out.reserve(mons_.size() * o.mons_.size());
  for (const auto& a : mons_)
    for (const auto& b : o.mons_) {
      bool zero = false;
      Monomial m = mulMonomials(a, b, zero);
      if (!zero) out.push_back(std::move(m));
    }
  return fromMonomials(mergedContent(content_, o.content_), std::move(out));
}

GradedExpr GradedExpr::scaled(const Scalar& s) const {
  if (s.isZero()) return zero(content_);
  std::vector<Monomial> out = mons_;
  for (auto& m : out) m.c *= s;
  return fromMonomials(content_, std::move(out));
}

GradedExpr GradedExpr::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  int p = 0;
  if (n > 1 && (!isHomogeneous(&p) || p != 0))
    throw std::invalid_argument("powers require an even base");
  GradedExpr r = constant(Scalar(Rational(1)), content_);
  for (int k = 0; k < n; ++k) r = r * *this;
  return r;
}

GradedExpr GradedExpr::totalDerivative(int dir, int label) const {
  if (content_ && (dir < 0 || dir >= content_->baseDim()))
    throw std::invalid_argument("total derivative: bad base direction");
  std::vector<Monomial> out;
  GradedExpr result = zero(content_);
  for (const auto& m : mons_) {
    // Leibniz over the even factors.
    for (size_t j = 0; j < m.evens.size(); ++j) {
      const EvenFactor& f = m.evens[j];
      Monomial rest = m;
      if (f.exp > 1)
        rest.evens[j].exp -= 1;
      else
        rest.evens.erase(rest.evens.begin() + static_cast<long>(j));
      rest.c.q *= f.exp;
      GradedExpr dfactor = zero(content_);
      if (f.isVar) {
        if (f.var.label != label) continue;
        dfactor = variable(content_, f.var.coord, f.var.sigma.plus(dir), f.var.label);
      } else {
        const GradedExpr& u = *f.fn.arg;
        GradedExpr du = u.totalDerivative(dir, label);
        if (du.isZero()) continue;
        switch (f.fn.kind) {
          case FuncKind::Sin: dfactor = func(FuncKind::Cos, u) * du; break;
          case FuncKind::Cos: dfactor = -(func(FuncKind::Sin, u) * du); break;
          case FuncKind::Exp: dfactor = func(FuncKind::Exp, u) * du; break;
        }
      }
      result = result + GradedExpr(content_, {rest}) * dfactor;
    }
    // Leibniz over the odd factors: D_i is even, substitute in place.
    for (size_t j = 0; j < m.odds.size(); ++j) {
      if (m.odds[j].label != label) continue;
      Monomial shifted = m;
      shifted.odds[j].sigma = shifted.odds[j].sigma.plus(dir);
      out.push_back(std::move(shifted));
    }
  }
  return result + fromMonomials(content_, std::move(out));
}

GradedExpr GradedExpr::totalDerivative(const MultiIndex& sigma, int label) const {
  GradedExpr r = *this;
  for (int dir = 0; dir < sigma.maxDir(); ++dir)
    for (int k = 0; k < sigma.count(dir); ++k) r = r.totalDerivative(dir, label);
  return r;
}

// Graded partial derivative. A monomial is the ordered product
// E_1...E_s * theta_1...theta_k (even factors first). For an odd variation
// extracted to the right, d_R(A*B) = A*d_R(B) + (-1)^{p(B)} d_R(A)*B; the
// mirror rule holds on the left. The derivative of factor j is rebuilt as
// (monomial without factor j) * dfactor, compensating the move of dfactor
// from position j to the right end.
GradedExpr GradedExpr::partial(const JetVar& v, Side side) const {
  const bool vOdd = content_ && content_->parity(v.coord) == 1;
  GradedExpr result = zero(content_);
  for (const auto& m : mons_) {
    const size_t nE = m.evens.size(), nO = m.odds.size();
    for (size_t j = 0; j < nE + nO; ++j) {
      GradedExpr dfactor;
      int dfParity = 0;
      Monomial rest = m;
      if (j < nE) {
        const EvenFactor& f = m.evens[j];
        if (f.exp > 1)
          rest.evens[j].exp -= 1;
        else
          rest.evens.erase(rest.evens.begin() + static_cast<long>(j));
        if (f.isVar) {
          if (vOdd || !(f.var == v)) continue;
          rest.c.q *= f.exp;
          dfactor = constant(Scalar(Rational(1)), content_);
        } else {
          const GradedExpr& u = *f.fn.arg;
          GradedExpr du = u.partial(v, side);
          if (du.isZero()) continue;
          rest.c.q *= f.exp;
          GradedExpr fprime;
          switch (f.fn.kind) {
            case FuncKind::Sin: fprime = func(FuncKind::Cos, u); break;
            case FuncKind::Cos: fprime = -func(FuncKind::Sin, u); break;
            case FuncKind::Exp: fprime = func(FuncKind::Exp, u); break;
          }
          dfactor = fprime * du;
          dfParity = vOdd ? 1 : 0;
        }
      } else {
        const size_t oj = j - nE;
        if (!vOdd || !(m.odds[oj] == v)) continue;
        rest.odds.erase(rest.odds.begin() + static_cast<long>(oj));
        dfactor = constant(Scalar(Rational(1)), content_);
      }
      const int oddsBefore = j < nE ? 0 : static_cast<int>(j - nE);
      const int oddsAfter = j < nE ? static_cast<int>(nO)
                                   : static_cast<int>(nO) - oddsBefore - 1;
      int sign = 1;
      if (vOdd && ((side == Side::Right ? oddsAfter : oddsBefore) & 1)) sign = -sign;
      if ((dfParity & 1) && (oddsAfter & 1)) sign = -sign;
      if (sign < 0) rest.c.q = -rest.c.q;
      result = result + GradedExpr(content_, {rest}) * dfactor;
    }
  }
  return result;
}

GradedExpr GradedExpr::euler(int coord, Side side, int label) const {
  std::set<JetVar> vars;
  collectVars(vars);
  GradedExpr result = zero(content_);
  for (const auto& v : vars) {
    if (v.coord != coord || v.label != label) continue;
    GradedExpr term = partial(v, side).totalDerivative(v.sigma, label);
    if (v.sigma.order() % 2 != 0) term = -term;
    result = result + term;
  }
  return result;
}

std::pair<GradedExpr, GradedExpr> GradedExpr::paritySplit() const {
  std::vector<Monomial> even, odd;
  for (const auto& m : mons_) (m.parity() == 0 ? even : odd).push_back(m);
  return {GradedExpr(content_, std::move(even)), GradedExpr(content_, std::move(odd))};
}

std::set<int> GradedExpr::labels() const {
  std::set<JetVar> vars;
  collectVars(vars);
  std::set<int> out;
  for (const auto& v : vars) out.insert(v.label);
  return out;
}

GradedExpr GradedExpr::relabeled(const std::map<int, int>& labelMap) const {
  auto mapLabel = [&](int l) {
    auto it = labelMap.find(l);
    return it == labelMap.end() ? l : it->second;
  };
  std::vector<Monomial> out = mons_;
  for (auto& m : out) {
    for (auto& f : m.evens) {
      if (f.isVar)
        f.var.label = mapLabel(f.var.label);
      else
        f.fn.arg = std::make_shared<const GradedExpr>(f.fn.arg->relabeled(labelMap));
    }
    for (auto& v : m.odds) v.label = mapLabel(v.label);
  }
  return fromMonomials(content_, std::move(out));
}

GradedExpr GradedExpr::relabeledAll(int label) const {
  std::map<int, int> m;
  for (int l : labels()) m[l] = label;
  return relabeled(m);
}

void GradedExpr::collectVars(std::set<JetVar>& out) const {
  for (const auto& m : mons_) {
    for (const auto& f : m.evens) {
      if (f.isVar)
        out.insert(f.var);
      else
        f.fn.arg->collectVars(out);
    }
    for (const auto& v : m.odds) out.insert(v);
  }
}

int GradedExpr::maxSigmaOrder() const {
  std::set<JetVar> vars;
  collectVars(vars);
  int r = 0;
  for (const auto& v : vars) r = std::max(r, v.sigma.order());
  return r;
}

GradedExpr GradedExpr::atZeroSection() const {
  GradedExpr result = zero(content_);
  for (const auto& m : mons_) {
    if (!m.odds.empty()) continue;
    GradedExpr term = constant(m.c, content_);
    bool vanished = false;
    for (const auto& f : m.evens) {
      if (f.isVar) {
        vanished = true;
        break;
      }
      GradedExpr a0 = f.fn.arg->atZeroSection();
      GradedExpr factor = func(f.fn.kind, a0).pow(f.exp);
      if (factor.isZero()) {
        vanished = true;
        break;
      }
      term = term * factor;
    }
    if (!vanished) result = result + term;
  }
  return result;
}

bool GradedExpr::operator==(const GradedExpr& o) const { return (*this <=> o) == 0; }

std::strong_ordering GradedExpr::operator<=>(const GradedExpr& o) const {
  if (auto c = mons_.size() <=> o.mons_.size(); c != 0) return c;
  for (size_t i = 0; i < mons_.size(); ++i) {
    if (auto c = compareKey(mons_[i], o.mons_[i]); c != 0) return c;
    if (auto c = compareRational(mons_[i].c.q, o.mons_[i].c.q); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void printVar(std::ostream& os, const JetVar& v, const FieldContent* fc, bool labels) {
  if (fc)
    os << fc->coord(v.coord).name;
  else
    os << "u" << v.coord;
  if (!v.sigma.empty()) os << "_" << v.sigma.suffix();
  if (labels) os << "@" << v.label;
}

}  // namespace

bool isTrivialDensity(const GradedExpr& f) {
  if (f.isZero()) return true;
  if (!f.content()) return false;  // a bare nonzero constant integrates to c*Vol
  if (!f.atZeroSection().isZero()) return false;
  auto ls = f.labels();
  if (ls.size() > 1) throw std::invalid_argument("density must live at a single base copy");
  const int label = ls.empty() ? 0 : *ls.begin();
  for (int c = 0; c < f.content()->size(); ++c)
    if (!f.euler(c, Side::Right, label).isZero()) return false;
  return true;
}

std::string GradedExpr::str() const {
  if (mons_.empty()) return "0";
  const FieldContent* fc = content_.get();
  const bool showLabels = labels().size() > 1;
  std::ostringstream os;
  bool first = true;
  for (const auto& m : mons_) {
    Rational q = m.c.q;
    if (!first) {
      os << (q < 0 ? " - " : " + ");
      if (q < 0) q = -q;
    } else if (q < 0) {
      os << "-";
      q = -q;
    }
    first = false;
    std::vector<std::string> parts;
    if (q != 1 || (m.evens.empty() && m.odds.empty() && m.c.ipow == 0 && m.c.hpow == 0))
      parts.push_back(rationalStr(q));
    if (m.c.ipow == 1) parts.push_back("i");
    if (m.c.hpow != 0)
      parts.push_back(m.c.hpow == 1 ? "hbar" : "hbar^" + std::to_string(m.c.hpow));
    for (const auto& f : m.evens) {
      std::ostringstream fo;
      if (f.isVar) {
        printVar(fo, f.var, fc, showLabels);
      } else {
        switch (f.fn.kind) {
          case FuncKind::Sin: fo << "sin("; break;
          case FuncKind::Cos: fo << "cos("; break;
          case FuncKind::Exp: fo << "exp("; break;
        }
        fo << f.fn.arg->str() << ")";
      }
      if (f.exp != 1) fo << "^" << f.exp;
      parts.push_back(fo.str());
    }
    for (const auto& v : m.odds) {
      std::ostringstream vo;
      printVar(vo, v, fc, showLabels);
      parts.push_back(vo.str());
    }
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) os << "*";
      os << parts[i];
    }
  }
  return os.str();
}

}  // namespace bvjet
