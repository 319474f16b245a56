#include "bvjet/local_functional.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bvjet {

namespace {

std::strong_ordering compareBlocks(const IntegralBlock& a, const IntegralBlock& b) {
  if (auto c = a.parity <=> b.parity; c != 0) return c;
  return a.density <=> b.density;
}

std::strong_ordering compareTermKey(const LFTerm& a, const LFTerm& b) {
  if (auto c = a.coeff.ipow <=> b.coeff.ipow; c != 0) return c;
  if (auto c = a.coeff.hpow <=> b.coeff.hpow; c != 0) return c;
  if (auto c = a.blocks.size() <=> b.blocks.size(); c != 0) return c;
  for (size_t i = 0; i < a.blocks.size(); ++i)
    if (auto c = compareBlocks(a.blocks[i], b.blocks[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

}  // namespace

LocalFunctional LocalFunctional::fromTerms(ContentPtr content, std::vector<LFTerm> terms) {
  std::vector<LFTerm> out;
  for (auto& t : terms) {
    if (t.coeff.isZero()) continue;
    bool zero = false;
    for (auto& b : t.blocks) {
      b.density = b.density.relabeledAll(0);
      if (b.density.isZero()) {
        zero = true;
        break;
      }
      int p = 0;
      if (!b.density.isHomogeneous(&p))
        throw std::logic_error("block density is not parity-homogeneous");
      b.parity = p;
      // pull the leading rational out of the density so that equal blocks
      // written with different overall scalars get one canonical form
      const Rational lead = b.density.monomials().front().c.q;
      if (lead != 1) {
        b.density = b.density.scaled(Scalar(1 / lead));
        t.coeff.q *= lead;
      }
    }
    if (zero) continue;
    // Sort blocks; the permutation restricted to odd blocks contributes the
    // Koszul sign. Two identical odd blocks force the term to vanish.
    std::vector<size_t> perm(t.blocks.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](size_t x, size_t y) {
      return compareBlocks(t.blocks[x], t.blocks[y]) == std::strong_ordering::less;
    });
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j] && t.blocks[perm[i]].parity == 1 &&
            t.blocks[perm[j]].parity == 1)
          sign = -sign;
    std::vector<IntegralBlock> sorted;
    sorted.reserve(perm.size());
    for (size_t i : perm) sorted.push_back(std::move(t.blocks[i]));
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i].parity == 1 && compareBlocks(sorted[i], sorted[i + 1]) == 0) {
        zero = true;
        break;
      }
    if (zero) continue;
    for (size_t i = 0; i < sorted.size(); ++i)
      sorted[i].density = sorted[i].density.relabeledAll(static_cast<int>(i));
    LFTerm nt;
    nt.coeff = sign < 0 ? -t.coeff : t.coeff;
    nt.blocks = std::move(sorted);
    out.push_back(std::move(nt));
  }
  std::sort(out.begin(), out.end(),
            [](const LFTerm& a, const LFTerm& b) { return compareTermKey(a, b) < 0; });
  std::vector<LFTerm> merged;
  for (auto& t : out) {
    if (!merged.empty() && compareTermKey(merged.back(), t) == 0)
      merged.back().coeff.q += t.coeff.q;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const LFTerm& t) { return t.coeff.isZero(); });
  LocalFunctional r;
  r.content_ = std::move(content);
  r.terms_ = std::move(merged);
  return r;
}

LocalFunctional LocalFunctional::unit(ContentPtr content, Scalar s) {
  LFTerm t;
  t.coeff = std::move(s);
  return fromTerms(std::move(content), {std::move(t)});
}

LocalFunctional LocalFunctional::block(const GradedExpr& density) {
  auto [even, odd] = density.paritySplit();
  std::vector<LFTerm> terms;
  for (const GradedExpr* part : {&even, &odd}) {
    if (part->isZero()) continue;
    LFTerm t;
    t.coeff = Scalar(Rational(1));
    t.blocks.push_back(IntegralBlock{*part, part->parity()});
    terms.push_back(std::move(t));
  }
  return fromTerms(density.content(), std::move(terms));
}

bool LocalFunctional::isHomogeneous(int* parity) const {
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

LocalFunctional LocalFunctional::operator+(const LocalFunctional& o) const {
  std::vector<LFTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return fromTerms(mergedContent(content_, o.content_), std::move(all));
}

LocalFunctional LocalFunctional::operator-() const {
  LocalFunctional r = *this;
  for (auto& t : r.terms_) t.coeff.q = -t.coeff.q;
  return r;
}

LocalFunctional LocalFunctional::operator-(const LocalFunctional& o) const {
  return *this + (-o);
}

LocalFunctional LocalFunctional::operator*(const LocalFunctional& o) const {
  std::vector<LFTerm> out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      LFTerm t;
      t.coeff = a.coeff * b.coeff;
      t.blocks = a.blocks;
      t.blocks.insert(t.blocks.end(), b.blocks.begin(), b.blocks.end());
      out.push_back(std::move(t));
    }
  return fromTerms(mergedContent(content_, o.content_), std::move(out));
}

LocalFunctional LocalFunctional::scaled(const Scalar& s) const {
  std::vector<LFTerm> out = terms_;
  for (auto& t : out) t.coeff *= s;
  return fromTerms(content_, std::move(out));
}

LocalFunctional LocalFunctional::pow(int n) const {
  LocalFunctional r = unit(content_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool LocalFunctional::operator==(const LocalFunctional& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (compareTermKey(terms_[i], o.terms_[i]) != 0) return false;
    if (terms_[i].coeff.q != o.terms_[i].coeff.q) return false;
  }
  return true;
}

std::string LocalFunctional::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool firstTerm = true;
  for (const auto& t : terms_) {
    if (!firstTerm) os << " + ";
    firstTerm = false;
    os << t.coeff.str();
    for (const auto& b : t.blocks) os << " * I(" << b.density.str() << ")";
  }
  return os.str();
}

namespace {

LocalFunctional termFunctional(const ContentPtr& c, const LFTerm& t) {
  return LocalFunctional::fromTerms(c, {t});
}

/// Splits t = front * rest where front is the first block with coefficient 1.
LocalFunctional splitFront(const ContentPtr& c, const LFTerm& t, LFTerm& frontOut) {
  frontOut.coeff = Scalar(Rational(1));
  frontOut.blocks = {t.blocks.front()};
  LFTerm rest;
  rest.coeff = t.coeff;
  rest.blocks.assign(t.blocks.begin() + 1, t.blocks.end());
  return termFunctional(c, rest);
}

LocalFunctional bracketBlocks(const ContentPtr& c, const IntegralBlock& fb,
                              const IntegralBlock& gb) {
  const FieldContent& fc = *c;
  GradedExpr f = fb.density.relabeledAll(0);
  GradedExpr g = gb.density.relabeledAll(0);
  GradedExpr density = GradedExpr::zero(c);
  for (int pair = 0; pair < fc.pairCount(); ++pair) {
    const int q = fc.fieldOfPair(pair), qd = fc.antifieldOfPair(pair);
    density = density + f.euler(q, Side::Right, 0) * g.euler(qd, Side::Left, 0) -
              f.euler(qd, Side::Right, 0) * g.euler(q, Side::Left, 0);
  }
  return LocalFunctional::block(density);
}

LocalFunctional bracketTerms(const ContentPtr& c, const LFTerm& F, const LFTerm& G);

LocalFunctional laplacianTerm(const ContentPtr& c, const LFTerm& T) {
  if (T.coeff.isZero() || T.blocks.empty()) return LocalFunctional(c);
  if (T.blocks.size() == 1) {
    const FieldContent& fc = *c;
    GradedExpr h = T.blocks.front().density.relabeledAll(0);
    GradedExpr density = GradedExpr::zero(c);
    for (int pair = 0; pair < fc.pairCount(); ++pair) {
      const int q = fc.fieldOfPair(pair), qd = fc.antifieldOfPair(pair);
      density = density + h.euler(qd, Side::Left, 0).euler(q, Side::Left, 0);
    }
    return LocalFunctional::block(density).scaled(T.coeff);
  }
  // Delta(F G) = Delta(F) G + (-1)^pF [[F,G]] + (-1)^pF F Delta(G)
  LFTerm front;
  LocalFunctional rest = splitFront(c, T, front);
  const int pF = front.parity();
  LocalFunctional result = laplacianTerm(c, front) * rest;
  for (const auto& rt : rest.terms()) {
    LocalFunctional cross = bracketTerms(c, front, rt);
    LocalFunctional tail = termFunctional(c, front) * laplacianTerm(c, rt);
    if (pF % 2 == 1) {
      cross = -cross;
      tail = -tail;
    }
    result = result + cross + tail;
  }
  return result;
}

LocalFunctional bracketTerms(const ContentPtr& c, const LFTerm& F, const LFTerm& G) {
  if (F.coeff.isZero() || G.coeff.isZero()) return LocalFunctional(c);
  if (F.blocks.empty() || G.blocks.empty()) return LocalFunctional(c);
  if (F.blocks.size() == 1 && G.blocks.size() == 1)
    return bracketBlocks(c, F.blocks.front(), G.blocks.front())
        .scaled(F.coeff * G.coeff);
  if (G.blocks.size() > 1) {
    // [[F, G1 Grest]] = [[F,G1]] Grest + (-1)^{(pF-1) pG1} G1 [[F,Grest]]
    LFTerm g1;
    LocalFunctional grest = splitFront(c, G, g1);
    const int pF = F.parity(), pG1 = g1.parity();
    LocalFunctional result = bracketTerms(c, F, g1) * grest;
    for (const auto& rt : grest.terms()) {
      LocalFunctional right = termFunctional(c, g1) * bracketTerms(c, F, rt);
      if (((pF + 1) * pG1) % 2 == 1) right = -right;
      result = result + right;
    }
    return result;
  }
  // F composite, G single block: shifted skew-symmetry
  // [[F,G]] = -(-1)^{(pF-1)(pG-1)} [[G,F]]
  const int pF = F.parity(), pG = G.parity();
  LocalFunctional r = bracketTerms(c, G, F);
  if (((pF + 1) * (pG + 1)) % 2 == 0) r = -r;
  return r;
}

}  // namespace

LocalFunctional schoutenJet(const LocalFunctional& F, const LocalFunctional& G) {
  ContentPtr c = mergedContent(F.content(), G.content());
  LocalFunctional r(c);
  for (const auto& ft : F.terms())
    for (const auto& gt : G.terms()) r = r + bracketTerms(c, ft, gt);
  return r;
}

LocalFunctional laplacianJet(const LocalFunctional& F) {
  LocalFunctional r(F.content());
  for (const auto& t : F.terms()) r = r + laplacianTerm(F.content(), t);
  return r;
}

namespace {

bool termKilledByTrivialBlock(const LFTerm& t) {
  for (const auto& b : t.blocks)
    if (isTrivialDensity(b.density)) return true;
  return false;
}

}  // namespace

bool functionalZero(const LocalFunctional& F) {
  std::vector<LFTerm> live;
  for (const auto& t : F.terms())
    if (!termKilledByTrivialBlock(t)) live.push_back(t);
  // Terms agreeing in every block but one combine linearly in the remaining
  // block; a group dies when the combined density is trivial.
  bool progress = true;
  while (progress && !live.empty()) {
    progress = false;
    size_t maxBlocks = 0;
    for (const auto& t : live) maxBlocks = std::max(maxBlocks, t.blocks.size());
    for (size_t j = 0; j < maxBlocks && !progress; ++j) {
      std::vector<char> dead(live.size(), 0);
      for (size_t a = 0; a < live.size() && !progress; ++a) {
        if (j >= live[a].blocks.size()) continue;
        GradedExpr combined = GradedExpr::zero(F.content());
        std::vector<size_t> members;
        for (size_t b = 0; b < live.size(); ++b) {
          if (live[b].blocks.size() != live[a].blocks.size()) continue;
          if (!live[a].coeff.sameUnit(live[b].coeff)) continue;
          if (live[a].blocks[j].parity != live[b].blocks[j].parity) continue;
          bool same = true;
          for (size_t k = 0; k < live[a].blocks.size() && same; ++k) {
            if (k == j) continue;
            if (compareBlocks(live[a].blocks[k], live[b].blocks[k]) != 0) same = false;
          }
          if (!same) continue;
          // move block j to the end, collecting the Koszul sign
          int sign = 1;
          if (live[b].blocks[j].parity == 1)
            for (size_t k = j + 1; k < live[b].blocks.size(); ++k)
              if (live[b].blocks[k].parity == 1) sign = -sign;
          Scalar s = sign < 0 ? -live[b].coeff : live[b].coeff;
          s.ipow = 0;
          s.hpow = 0;  // shared unit stripped
          combined = combined + live[b].blocks[j].density.scaled(s);
          members.push_back(b);
        }
        if (members.size() > 1 && isTrivialDensity(combined)) {
          for (size_t b : members) dead[b] = 1;
          progress = true;
        }
      }
      if (progress) {
        std::vector<LFTerm> next;
        for (size_t b = 0; b < live.size(); ++b)
          if (!dead[b]) next.push_back(live[b]);
        live = std::move(next);
      }
    }
  }
  return live.empty();
}

bool functionalEqual(const LocalFunctional& F, const LocalFunctional& G) {
  return functionalZero(F - G);
}

}  // namespace bvjet
