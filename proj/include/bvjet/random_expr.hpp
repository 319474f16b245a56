// Seeded random densities and functionals for the property suites.
#pragma once

#include "bvjet/local_functional.hpp"

#include <random>

namespace bvjet {

struct RandomExprOptions {
  int maxMonomials = 3;
  int maxFactors = 3;   // jet-variable factors per monomial
  int maxOrder = 2;     // highest |sigma|
  bool allowFuncs = true;
  int coeffRange = 3;
};

class RandomGen {
 public:
  RandomGen(ContentPtr content, uint64_t seed) : content_(std::move(content)), rng_(seed) {}

  /// Seed from the BVJET_SEED environment variable, or the default.
  static uint64_t seedFromEnv(uint64_t fallback = 20240817);

  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi);

  GradedExpr density(const RandomExprOptions& opt = {});
  /// Nonzero parity-homogeneous density of the requested parity.
  GradedExpr homogeneousDensity(int parity, const RandomExprOptions& opt = {});
  /// Single integral block of the requested parity.
  LocalFunctional blockFunctional(int parity, const RandomExprOptions& opt = {});
  /// Product of 1..maxBlocks random homogeneous blocks.
  LocalFunctional productFunctional(int maxBlocks, const RandomExprOptions& opt = {});

 private:
  ContentPtr content_;
  std::mt19937_64 rng_;
};

}  // namespace bvjet
