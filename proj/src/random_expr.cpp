#include "bvjet/random_expr.hpp"

#include <cstdlib>

namespace bvjet {

uint64_t RandomGen::seedFromEnv(uint64_t fallback) {
  if (const char* s = std::getenv("BVJET_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return v;
  }
  return fallback;
}

int RandomGen::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

GradedExpr RandomGen::density(const RandomExprOptions& opt) {
  const int n = content_->baseDim();
  auto randomSigma = [&] {
    MultiIndex s;
    int order = uniform(0, opt.maxOrder);
    for (int k = 0; k < order; ++k) s = s.plus(uniform(0, n - 1));
    return s;
  };
  GradedExpr sum = GradedExpr::zero(content_);
  const int monomials = uniform(1, opt.maxMonomials);
  for (int m = 0; m < monomials; ++m) {
    int c = uniform(1, opt.coeffRange) * (uniform(0, 1) ? 1 : -1);
    GradedExpr term = GradedExpr::constant(Scalar(Rational(c)), content_);
    const int factors = uniform(1, opt.maxFactors);
    for (int f = 0; f < factors; ++f) {
      const int kind = uniform(0, opt.allowFuncs ? 3 : 2);
      if (kind == 3) {
        // sin/cos/exp of a small even argument built from even coordinates
        std::vector<int> evens;
        for (int i = 0; i < content_->size(); ++i)
          if (content_->parity(i) == 0) evens.push_back(i);
        if (evens.empty()) continue;
        GradedExpr arg = GradedExpr::variable(
            content_, evens[static_cast<size_t>(uniform(0, static_cast<int>(evens.size()) - 1))],
            randomSigma(), 0);
        FuncKind fk = static_cast<FuncKind>(uniform(0, 2));
        term = term * GradedExpr::func(fk, arg);
      } else {
        const int coord = uniform(0, content_->size() - 1);
        term = term * GradedExpr::variable(content_, coord, randomSigma(), 0);
      }
    }
    sum = sum + term;
  }
  return sum;
}

GradedExpr RandomGen::homogeneousDensity(int parity, const RandomExprOptions& opt) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto [even, odd] = density(opt).paritySplit();
    const GradedExpr& part = parity == 0 ? even : odd;
    if (!part.isZero()) return part;
  }
  throw std::runtime_error("failed to generate a homogeneous density");
}

LocalFunctional RandomGen::blockFunctional(int parity, const RandomExprOptions& opt) {
  return LocalFunctional::block(homogeneousDensity(parity, opt));
}

LocalFunctional RandomGen::productFunctional(int maxBlocks, const RandomExprOptions& opt) {
  const int blocks = uniform(1, maxBlocks);
  LocalFunctional r = LocalFunctional::unit(content_);
  for (int b = 0; b < blocks; ++b) r = r * blockFunctional(uniform(0, 1), opt);
  if (r.isStructurallyZero()) return blockFunctional(0, opt);
  return r;
}

}  // namespace bvjet
