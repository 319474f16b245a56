// Seed-fixed randomized property suites; BVJET_SEED overrides the seed.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bvjet/random_expr.hpp"
#include "bvjet/verify.hpp"

using namespace bvjet;

TEST_CASE("bracket property suite") {
  Report r = runVerifySuite("schouten", RandomGen::seedFromEnv());
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(r.checks.size() >= 6);
}

TEST_CASE("Laplacian property suite") {
  Report r = runVerifySuite("laplacian", RandomGen::seedFromEnv());
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(r.checks.size() >= 10);
}

TEST_CASE("suites on a richer two-pair field content") {
  Report r = runVerifySuite("schouten", RandomGen::seedFromEnv() + 7,
                            "u parity 0; ud antifield_of u; c parity 1; cd antifield_of c", 1);
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("bracket suite over a two-dimensional base") {
  Report r = runVerifySuite("schouten", RandomGen::seedFromEnv() + 11,
                            "q parity 0; p antifield_of q", 2);
  for (const auto& c : r.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("empty field declaration short-circuits to a skipped pass") {
  Report r = runVerifySuite("schouten", 1, " ", 1);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks.front().pass);
  CHECK(r.checks.front().detail.find("skipped") != std::string::npos);
}
