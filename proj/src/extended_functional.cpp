#include "bvjet/extended_functional.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bvjet {

namespace {

int slotKoszulParity(const EFSlot& s) { return s.coupledWith >= 0 ? 0 : s.parity; }

int symbolKoszulParity(const EFTerm& t, const EFSymbol& s) {
  return s.isFactor ? t.factors[static_cast<size_t>(s.index)].parity
                    : slotKoszulParity(t.slots[static_cast<size_t>(s.index)]);
}

std::string densityKey(const GradedExpr& d) { return d.relabeledAll(0).str(); }

}  // namespace

int EFTerm::parity() const {
  int p = 0;
  for (const auto& f : factors) p += f.parity;
  for (const auto& s : slots)
    if (s.coupledWith < 0) p += s.parity;
  return p & 1;
}

// ---------------------------------------------------------------------------
// Canonicalization
//
// Symbols are sorted by a label-blind refinement key; remaining ties are
// resolved by enumerating permutations within tie groups and keeping the
// lexicographically least serialization (base labels and slot names are
// numbered by first appearance). The Koszul sign of the chosen permutation,
// restricted to odd symbols, multiplies the coefficient; if the least
// serialization is reachable with both signs the term vanishes (two
// interchangeable odd symbols).

namespace {

std::string serializeOrdered(const EFTerm& t, const std::vector<size_t>& perm) {
  std::map<int, int> baseNames;
  std::vector<int> slotNames(t.slots.size(), -1);
  auto baseName = [&](int b) {
    auto it = baseNames.find(b);
    if (it == baseNames.end())
      it = baseNames.emplace(b, static_cast<int>(baseNames.size())).first;
    return it->second;
  };
  int nextSlot = 0;
  for (size_t i : perm) {
    const EFSymbol& sym = t.word[i];
    if (!sym.isFactor && slotNames[static_cast<size_t>(sym.index)] < 0)
      slotNames[static_cast<size_t>(sym.index)] = nextSlot++;
  }
  std::ostringstream os;
  os << "u" << t.coeff.ipow << "," << t.coeff.hpow << ";";
  for (size_t i : perm) {
    const EFSymbol& sym = t.word[i];
    if (sym.isFactor) {
      const EFFactor& f = t.factors[static_cast<size_t>(sym.index)];
      os << "F[b" << baseName(f.base) << ":" << densityKey(f.density);
      std::vector<std::pair<int, std::string>> tags;
      for (const auto& tg : f.tags)
        tags.emplace_back(slotNames[static_cast<size_t>(tg.slot)], tg.sigma.suffix());
      std::sort(tags.begin(), tags.end());
      for (const auto& tg : tags) os << "|y" << tg.first << "^" << tg.second;
      os << "]";
    } else {
      const EFSlot& s = t.slots[static_cast<size_t>(sym.index)];
      os << "S[" << (s.kind == CoordKind::Field ? "q" : "q+") << s.pair << "@b"
         << baseName(s.support) << ":y" << slotNames[static_cast<size_t>(sym.index)];
      if (s.coupledWith >= 0) os << "~y" << slotNames[static_cast<size_t>(s.coupledWith)];
      os << "]";
    }
  }
  return os.str();
}

int permutationKoszul(const EFTerm& t, const std::vector<size_t>& perm) {
  std::vector<size_t> oddPositions;
  for (size_t i : perm)
    if (symbolKoszulParity(t, t.word[i]) == 1) oddPositions.push_back(i);
  int sign = 1;
  for (size_t a = 0; a < oddPositions.size(); ++a)
    for (size_t b = a + 1; b < oddPositions.size(); ++b)
      if (oddPositions[a] > oddPositions[b]) sign = -sign;
  return sign;
}

std::string roughKey(const EFTerm& t, size_t wordPos) {
  const EFSymbol& sym = t.word[wordPos];
  std::ostringstream os;
  if (sym.isFactor) {
    const EFFactor& f = t.factors[static_cast<size_t>(sym.index)];
    os << "F:" << densityKey(f.density) << ":";
    std::vector<std::string> sigs;
    for (const auto& tg : f.tags) sigs.push_back(tg.sigma.suffix());
    std::sort(sigs.begin(), sigs.end());
    for (const auto& s : sigs) os << s << ",";
    int nq = 0, nd = 0;
    for (const auto& s : t.slots)
      if (s.support == f.base) (s.kind == CoordKind::Field ? nq : nd)++;
    os << "#" << nq << "." << nd;
  } else {
    const int si = sym.index;
    const EFSlot& s = t.slots[static_cast<size_t>(si)];
    os << "S:" << (s.kind == CoordKind::Field ? "q" : "d") << ":" << s.pair << ":"
       << (s.coupledWith >= 0 ? 1 : 0) << ":";
    int ntags = 0;
    for (const auto& f : t.factors)
      for (const auto& tg : f.tags)
        if (tg.slot == si) ntags += tg.sigma.order();
    os << ntags;
  }
  return os.str();
}

struct CanonTerm {
  std::string key;
  EFTerm term;
  bool zero = false;
};

CanonTerm canonicalizeTerm(EFTerm t) {
  CanonTerm out;
  if (t.coeff.isZero()) {
    out.zero = true;
    return out;
  }
  for (auto& f : t.factors) {
    f.density = f.density.relabeledAll(f.base);
    if (f.density.isZero()) {
      out.zero = true;
      return out;
    }
    int p = 0;
    if (!f.density.isHomogeneous(&p))
      throw std::logic_error("extended factor density is not parity-homogeneous");
    f.parity = p;
    const Rational lead = f.density.monomials().front().c.q;
    if (lead != 1) {
      f.density = f.density.scaled(Scalar(1 / lead));
      t.coeff.q *= lead;
    }
  }
  const size_t n = t.word.size();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::vector<std::string> keys(n);
  for (size_t i = 0; i < n; ++i) keys[i] = roughKey(t, i);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](size_t a, size_t b) { return keys[a] < keys[b]; });
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < n;) {
    size_t j = i + 1;
    while (j < n && keys[perm[j]] == keys[perm[i]]) ++j;
    if (j - i > 1) groups.emplace_back(i, j);
    i = j;
  }
  std::string bestKey;
  std::vector<size_t> bestPerm = perm;
  int bestSign = 0;
  bool ambiguous = false;
  std::vector<size_t> cur = perm;
  std::function<void(size_t)> enumerate = [&](size_t g) {
    if (g == groups.size()) {
      std::string k = serializeOrdered(t, cur);
      int s = permutationKoszul(t, cur);
      if (bestKey.empty() || k < bestKey) {
        bestKey = k;
        bestSign = s;
        bestPerm = cur;
        ambiguous = false;
      } else if (k == bestKey && s != bestSign) {
        ambiguous = true;
      }
      return;
    }
    auto [lo, hi] = groups[g];
    std::vector<size_t> slice(cur.begin() + static_cast<long>(lo),
                              cur.begin() + static_cast<long>(hi));
    std::sort(slice.begin(), slice.end());
    do {
      for (size_t i = lo; i < hi; ++i) cur[i] = slice[i - lo];
      enumerate(g + 1);
    } while (std::next_permutation(slice.begin(), slice.end()));
  };
  enumerate(0);
  if (ambiguous) {
    out.zero = true;
    return out;
  }
  if (bestSign < 0) t.coeff.q = -t.coeff.q;

  // Rebuild in canonical order with renamed base labels and slot indices.
  EFTerm nt;
  nt.coeff = t.coeff;
  std::map<int, int> baseMap;
  auto mapBase = [&](int b) {
    auto it = baseMap.find(b);
    if (it == baseMap.end()) it = baseMap.emplace(b, static_cast<int>(baseMap.size())).first;
    return it->second;
  };
  std::vector<int> slotMap(t.slots.size(), -1);
  int nextSlot = 0;
  for (size_t i : bestPerm) {
    const EFSymbol& sym = t.word[i];
    if (!sym.isFactor && slotMap[static_cast<size_t>(sym.index)] < 0)
      slotMap[static_cast<size_t>(sym.index)] = nextSlot++;
  }
  nt.slots.resize(static_cast<size_t>(nextSlot));
  for (size_t i : bestPerm) {
    const EFSymbol& sym = t.word[i];
    if (sym.isFactor) {
      const EFFactor& f = t.factors[static_cast<size_t>(sym.index)];
      EFFactor nf;
      nf.base = mapBase(f.base);
      nf.density = f.density.relabeledAll(nf.base);
      nf.parity = f.parity;
      for (const auto& tg : f.tags)
        nf.tags.push_back(EFTag{slotMap[static_cast<size_t>(tg.slot)], tg.sigma});
      std::sort(nf.tags.begin(), nf.tags.end(), [](const EFTag& a, const EFTag& b) {
        if (a.slot != b.slot) return a.slot < b.slot;
        return a.sigma < b.sigma;
      });
      nt.word.push_back(EFSymbol{true, static_cast<int>(nt.factors.size())});
      nt.factors.push_back(std::move(nf));
    } else {
      const EFSlot& s = t.slots[static_cast<size_t>(sym.index)];
      EFSlot ns;
      ns.kind = s.kind;
      ns.pair = s.pair;
      ns.parity = s.parity;
      ns.support = mapBase(s.support);
      ns.coupledWith = s.coupledWith >= 0 ? slotMap[static_cast<size_t>(s.coupledWith)] : -1;
      const int ni = slotMap[static_cast<size_t>(sym.index)];
      nt.slots[static_cast<size_t>(ni)] = ns;
      nt.word.push_back(EFSymbol{false, ni});
    }
  }
  out.term = std::move(nt);
  std::vector<size_t> id(out.term.word.size());
  std::iota(id.begin(), id.end(), size_t{0});
  out.key = serializeOrdered(out.term, id);
  return out;
}

/// Appends src to dst with base labels, factor indices and slot indices
/// shifted past dst's; returns the slot index shift.
int appendTerm(EFTerm& dst, const EFTerm& src) {
  int baseShift = 0;
  for (const auto& f : dst.factors) baseShift = std::max(baseShift, f.base + 1);
  for (const auto& s : dst.slots) baseShift = std::max(baseShift, s.support + 1);
  const int factorShift = static_cast<int>(dst.factors.size());
  const int slotShift = static_cast<int>(dst.slots.size());
  for (const auto& f : src.factors) {
    EFFactor nf = f;
    nf.base += baseShift;
    nf.density = nf.density.relabeledAll(nf.base);
    for (auto& tg : nf.tags) tg.slot += slotShift;
    dst.factors.push_back(std::move(nf));
  }
  for (const auto& s : src.slots) {
    EFSlot ns = s;
    ns.support += baseShift;
    if (ns.coupledWith >= 0) ns.coupledWith += slotShift;
    dst.slots.push_back(ns);
  }
  for (const auto& sym : src.word)
    dst.word.push_back(
        EFSymbol{sym.isFactor, sym.index + (sym.isFactor ? factorShift : slotShift)});
  return slotShift;
}

}  // namespace

ExtendedFunctional ExtendedFunctional::fromTerms(ContentPtr content,
                                                 std::vector<EFTerm> terms) {
  std::map<std::string, EFTerm> canon;
  for (auto& t : terms) {
    CanonTerm ct = canonicalizeTerm(std::move(t));
    if (ct.zero) continue;
    auto it = canon.find(ct.key);
    if (it == canon.end())
      canon.emplace(std::move(ct.key), std::move(ct.term));
    else
      it->second.coeff.q += ct.term.coeff.q;
  }
  ExtendedFunctional r(std::move(content));
  for (auto& [k, t] : canon) {
    if (t.coeff.isZero()) continue;
    r.terms_.push_back(std::move(t));
  }
  return r;
}

ExtendedFunctional ExtendedFunctional::fromLocal(const LocalFunctional& f) {
  std::vector<EFTerm> terms;
  for (const auto& lt : f.terms()) {
    EFTerm t;
    t.coeff = lt.coeff;
    for (size_t i = 0; i < lt.blocks.size(); ++i) {
      EFFactor fac;
      fac.base = static_cast<int>(i);
      fac.density = lt.blocks[i].density.relabeledAll(fac.base);
      fac.parity = lt.blocks[i].parity;
      t.word.push_back(EFSymbol{true, static_cast<int>(t.factors.size())});
      t.factors.push_back(std::move(fac));
    }
    terms.push_back(std::move(t));
  }
  return fromTerms(f.content(), std::move(terms));
}

ExtendedFunctional ExtendedFunctional::unit(ContentPtr content, Scalar s) {
  EFTerm t;
  t.coeff = std::move(s);
  return fromTerms(std::move(content), {std::move(t)});
}

bool ExtendedFunctional::isHomogeneous(int* parity) const {
  if (terms_.empty()) {
    if (parity) *parity = 0;
    return true;
  }
  int p = terms_.front().parity();
  for (const auto& t : terms_)
    if (t.parity() != p) return false;
  if (parity) *parity = p;
  return true;
}

ExtendedFunctional ExtendedFunctional::operator+(const ExtendedFunctional& o) const {
  std::vector<EFTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return fromTerms(mergedContent(content_, o.content_), std::move(all));
}

ExtendedFunctional ExtendedFunctional::operator-() const {
  ExtendedFunctional r = *this;
  for (auto& t : r.terms_) t.coeff.q = -t.coeff.q;
  return r;
}

ExtendedFunctional ExtendedFunctional::operator-(const ExtendedFunctional& o) const {
  return *this + (-o);
}

ExtendedFunctional ExtendedFunctional::operator*(const ExtendedFunctional& o) const {
  std::vector<EFTerm> out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      EFTerm t = a;
      t.coeff = a.coeff * b.coeff;
      appendTerm(t, b);
      out.push_back(std::move(t));
    }
  return fromTerms(mergedContent(content_, o.content_), std::move(out));
}

ExtendedFunctional ExtendedFunctional::scaled(const Scalar& s) const {
  std::vector<EFTerm> out = terms_;
  for (auto& t : out) t.coeff *= s;
  return fromTerms(content_, std::move(out));
}

ExtendedFunctional ExtendedFunctional::pow(int n) const {
  ExtendedFunctional r = unit(content_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool ExtendedFunctional::operator==(const ExtendedFunctional& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    std::vector<size_t> id(terms_[i].word.size());
    std::iota(id.begin(), id.end(), size_t{0});
    std::vector<size_t> id2(o.terms_[i].word.size());
    std::iota(id2.begin(), id2.end(), size_t{0});
    if (serializeOrdered(terms_[i], id) != serializeOrdered(o.terms_[i], id2)) return false;
    if (terms_[i].coeff.q != o.terms_[i].coeff.q) return false;
  }
  return true;
}

std::string ExtendedFunctional::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << "\n + ";
    first = false;
    os << "(" << t.coeff.str() << ")";
    if (t.word.empty()) os << " * 1";
    for (const auto& sym : t.word) {
      if (sym.isFactor) {
        const EFFactor& f = t.factors[static_cast<size_t>(sym.index)];
        os << " * {";
        for (const auto& tg : f.tags)
          os << "(-d/dy" << tg.slot << ")^" << tg.sigma.order() << " ";
        os << f.density.relabeledAll(0).str() << "}@b" << f.base;
      } else {
        const EFSlot& s = t.slots[static_cast<size_t>(sym.index)];
        os << " * " << (s.kind == CoordKind::Field ? "ds" : "ds+") << "(y" << sym.index << "@b"
           << s.support << ")";
      }
    }
    bool anyCoupling = false;
    for (size_t i = 0; i < t.slots.size(); ++i) {
      const int j = t.slots[i].coupledWith;
      if (j > static_cast<int>(i)) {
        os << (anyCoupling ? ", " : "  <couplings: ");
        anyCoupling = true;
        os << "(y" << i << ",y" << j << ")";
      }
    }
    if (anyCoupling) os << ">";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Derivatives and the operations built from them

namespace {

/// Derivative of one term with respect to a fiber coordinate at a fresh base
/// point. The slot emerges at the differentiated factor's boundary (the
/// within-factor transport is done by GradedExpr::partial) and is then moved
/// to the word boundary on the requested side, collecting Koszul signs;
/// coupled slots count as even. The new slot's index (common to all produced
/// terms) is reported through newSlotIndexOut.
std::vector<EFTerm> deriveTerm(const ContentPtr& content, const EFTerm& t, int coord,
                               Side side, int* newSlotIndexOut) {
  std::vector<EFTerm> out;
  const CoordDecl& cd = content->coord(coord);
  const int slotParity = cd.parity;
  if (newSlotIndexOut) *newSlotIndexOut = static_cast<int>(t.slots.size());
  for (size_t w = 0; w < t.word.size(); ++w) {
    if (!t.word[w].isFactor) continue;
    const int fi = t.word[w].index;
    const EFFactor& f = t.factors[static_cast<size_t>(fi)];
    std::set<JetVar> vars;
    f.density.collectVars(vars);
    for (const auto& v : vars) {
      if (v.coord != coord || v.label != f.base) continue;
      GradedExpr d = f.density.partial(v, side);
      if (d.isZero()) continue;
      EFTerm nt = t;
      nt.factors[static_cast<size_t>(fi)].density = d;
      nt.factors[static_cast<size_t>(fi)].parity = (f.parity + slotParity) & 1;
      if (v.sigma.order() > 0)
        nt.factors[static_cast<size_t>(fi)].tags.push_back(
            EFTag{static_cast<int>(nt.slots.size()), v.sigma});
      int crossed = 0;
      if (side == Side::Right) {
        for (size_t k = w + 1; k < t.word.size(); ++k)
          crossed += symbolKoszulParity(t, t.word[k]);
      } else {
        for (size_t k = 0; k < w; ++k) crossed += symbolKoszulParity(t, t.word[k]);
      }
      if ((slotParity & 1) && (crossed & 1)) nt.coeff.q = -nt.coeff.q;
      EFSlot slot;
      slot.kind = cd.kind;
      slot.pair = cd.pair;
      slot.parity = slotParity;
      slot.support = f.base;
      slot.coupledWith = -1;
      const int slotIndex = static_cast<int>(nt.slots.size());
      nt.slots.push_back(slot);
      if (side == Side::Right)
        nt.word.push_back(EFSymbol{false, slotIndex});
      else
        nt.word.insert(nt.word.begin(), EFSymbol{false, slotIndex});
      out.push_back(std::move(nt));
    }
  }
  return out;
}

}  // namespace

ExtendedFunctional functionalDerivative(const ExtendedFunctional& F, int coord, Side side) {
  std::vector<EFTerm> out;
  for (const auto& t : F.terms()) {
    auto dt = deriveTerm(F.content(), t, coord, side, nullptr);
    out.insert(out.end(), dt.begin(), dt.end());
  }
  return ExtendedFunctional::fromTerms(F.content(), std::move(out));
}

ExtendedFunctional functionalSchouten(const ExtendedFunctional& F,
                                      const ExtendedFunctional& G) {
  ContentPtr c = mergedContent(F.content(), G.content());
  std::vector<EFTerm> out;
  struct Half {
    int coordF, coordG, orientation;
  };
  for (const auto& tf : F.terms())
    for (const auto& tg : G.terms())
      for (int pair = 0; pair < c->pairCount(); ++pair) {
        const int q = c->fieldOfPair(pair), qd = c->antifieldOfPair(pair);
        // <dq(y1), dq+(y2)> couples with +1; <dq+(y1), dq(y2)> with -1
        for (const Half& h : {Half{q, qd, +1}, Half{qd, q, -1}}) {
          int slotF = -1, slotG = -1;
          auto fTerms = deriveTerm(c, tf, h.coordF, Side::Right, &slotF);
          if (fTerms.empty()) continue;
          auto gTerms = deriveTerm(c, tg, h.coordG, Side::Left, &slotG);
          for (const auto& lt : fTerms)
            for (const auto& rt : gTerms) {
              EFTerm nt = lt;
              nt.coeff = lt.coeff * rt.coeff;
              if (h.orientation < 0) nt.coeff.q = -nt.coeff.q;
              const int slotShift = appendTerm(nt, rt);
              const int a = slotF, b = slotG + slotShift;
              nt.slots[static_cast<size_t>(a)].coupledWith = b;
              nt.slots[static_cast<size_t>(b)].coupledWith = a;
              out.push_back(std::move(nt));
            }
        }
      }
  return ExtendedFunctional::fromTerms(c, std::move(out));
}

ExtendedFunctional functionalLaplacian(const ExtendedFunctional& F) {
  const ContentPtr& c = F.content();
  std::vector<EFTerm> out;
  for (const auto& t : F.terms())
    for (int pair = 0; pair < c->pairCount(); ++pair) {
      const int q = c->fieldOfPair(pair), qd = c->antifieldOfPair(pair);
      int slotZ2 = -1;
      auto inner = deriveTerm(c, t, qd, Side::Left, &slotZ2);
      for (const auto& it : inner) {
        int slotZ1 = -1;
        auto outer = deriveTerm(c, it, q, Side::Left, &slotZ1);
        for (auto& ot : outer) {
          ot.slots[static_cast<size_t>(slotZ1)].coupledWith = slotZ2;
          ot.slots[static_cast<size_t>(slotZ2)].coupledWith = slotZ1;
          out.push_back(std::move(ot));
        }
      }
    }
  return ExtendedFunctional::fromTerms(c, std::move(out));
}

// ---------------------------------------------------------------------------
// Diagonal restriction

namespace {

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LocalFunctional restrictToDiagonal(const ExtendedFunctional& F, bool normalizeFree) {
  const ContentPtr& c = F.content();
  std::vector<LFTerm> out;
  for (const auto& t : F.terms()) {
    for (const auto& s : t.slots)
      if (s.coupledWith < 0 && !normalizeFree)
        throw std::invalid_argument("free test-shift slot");
    // Nodes: base label b, and slot i as -(i+1). Couplings identify the two
    // slots' points; each slot's point coincides with its support.
    UnionFind uf;
    auto slotNode = [](int i) { return -(i + 1); };
    for (const auto& f : t.factors) uf.find(f.base);
    for (size_t i = 0; i < t.slots.size(); ++i) {
      uf.unite(slotNode(static_cast<int>(i)), t.slots[i].support);
      if (t.slots[i].coupledWith >= 0)
        uf.unite(slotNode(static_cast<int>(i)), slotNode(t.slots[i].coupledWith));
    }
    std::map<int, GradedExpr> componentDensity;
    std::vector<int> componentOrder;
    bool zero = false;
    for (const auto& sym : t.word) {
      if (!sym.isFactor) continue;
      const EFFactor& f = t.factors[static_cast<size_t>(sym.index)];
      GradedExpr d = f.density;
      for (const auto& tg : f.tags) {
        d = d.totalDerivative(tg.sigma, f.base);
        if (tg.sigma.order() % 2 != 0) d = -d;
      }
      if (d.isZero()) {
        zero = true;
        break;
      }
      const int root = uf.find(f.base);
      auto it = componentDensity.find(root);
      if (it == componentDensity.end()) {
        componentDensity.emplace(root, d.relabeledAll(root));
        componentOrder.push_back(root);
      } else {
        it->second = it->second * d.relabeledAll(root);
      }
    }
    if (zero) continue;
    LFTerm lt;
    lt.coeff = t.coeff;
    for (int root : componentOrder) {
      const GradedExpr& d = componentDensity.at(root);
      if (d.isZero()) {
        zero = true;
        break;
      }
      lt.blocks.push_back(IntegralBlock{d, d.parity()});
    }
    if (zero) continue;
    out.push_back(std::move(lt));
  }
  return LocalFunctional::fromTerms(c, std::move(out));
}

}  // namespace bvjet
