// Acceptance suite: one pass/fail line per criterion, every tolerance pinned.
// Usage: acceptance [path-to-bvjet-cli]  (the CLI path enables criterion 7's
// exit-code matrix and the end-to-end verify run).
#include "bvjet/parser.hpp"
#include "bvjet/random_expr.hpp"
#include "bvjet/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace bvjet;

namespace {

struct Criterion {
  std::string name;
  bool pass = false;
  long ms = 0;
  long budgetMs = 0;  // 0 = no budget
  std::string detail;
};

long msSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

bool suitePassed(const Report& r, std::string* detail) {
  int failed = 0;
  for (const auto& c : r.checks)
    if (!c.pass) {
      ++failed;
      *detail += (detail->empty() ? "" : "; ") + c.name;
    }
  return failed == 0;
}

int runCli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const uint64_t seed = RandomGen::seedFromEnv();
  std::vector<Criterion> results;

  {  // 1: counterexample reproduction, jet mode, exact canonical forms
    Criterion c{"criterion 1: counterexample reproduction (jet mode)"};
    c.budgetMs = 1000;
    auto t0 = std::chrono::steady_clock::now();
    Report r = runVerifySuite("counterexample", seed);
    c.ms = msSince(t0);
    c.pass = suitePassed(r, &c.detail) && c.ms < c.budgetMs;
    results.push_back(c);
  }
  {  // 2: functional-mode reproduction with cancellations, exact
    Criterion c{"criterion 2: functional-mode reproduction with cancellations"};
    c.budgetMs = 5000;
    auto t0 = std::chrono::steady_clock::now();
    Report r = runVerifySuite("excounter2", seed);
    c.ms = msSince(t0);
    c.pass = suitePassed(r, &c.detail) && c.ms < c.budgetMs;
    results.push_back(c);
  }
  {  // 3: Yang-Mills master equations at n = 2 and n = 4
    Criterion c{"criterion 3: Yang-Mills master equations (su2, n=2 and n=4)"};
    c.budgetMs = 60000;
    auto t0 = std::chrono::steady_clock::now();
    Report r = runVerifySuite("yangmills", seed);
    c.ms = msSince(t0);
    c.pass = suitePassed(r, &c.detail) && c.ms < c.budgetMs;
    results.push_back(c);
  }
  {  // 4 and 5: property suites, symbolic and numeric halves
    Criterion c4{"criterion 4: randomized property suites (seed-fixed, exact verdicts)"};
    Criterion c5{"criterion 5: Grassmann-oracle equivalence on periodic sections"};
    c4.budgetMs = 300000;
    auto t0 = std::chrono::steady_clock::now();
    Report rs = runVerifySuite("schouten", seed);
    Report rl = runVerifySuite("laplacian", seed);
    c4.ms = msSince(t0);
    c5.ms = c4.ms;
    bool sym = true, num = true;
    for (const Report* r : {&rs, &rl})
      for (const auto& chk : r->checks) {
        bool* target = chk.anchor.starts_with("oracle/") ? &num : &sym;
        if (!chk.pass) {
          *target = false;
          (chk.anchor.starts_with("oracle/") ? c5.detail : c4.detail) += chk.name + "; ";
        }
      }
    c4.pass = sym && c4.ms < c4.budgetMs;
    c5.pass = num;
    results.push_back(c4);
    results.push_back(c5);
  }
  {  // 6: quantum layer
    Criterion c{"criterion 6: quantum layer (power lemmas, QME, Omega)"};
    c.budgetMs = 120000;
    auto t0 = std::chrono::steady_clock::now();
    Report r = runVerifySuite("qme", seed);
    c.ms = msSince(t0);
    c.pass = suitePassed(r, &c.detail) && c.ms < c.budgetMs;
    results.push_back(c);
  }
  {  // 7: parser round-trip, exit codes, verify all end-to-end
    Criterion c{"criterion 7: parser round-trip, exit-code matrix, verify all"};
    auto t0 = std::chrono::steady_clock::now();
    bool roundTrip = true;
    {
      RandomGen gen(nullptr, seed);
      const std::vector<std::string> names = {"q", "p", "u1"};
      for (int i = 0; i < 1000 && roundTrip; ++i) {
        ASTPtr ast = randomAST(gen, names, 4);
        const std::string printed = printAST(*ast);
        ASTPtr again = parseDensity(printed);
        roundTrip = astEqual(*ast, *again) && printAST(*again) == printed;
        if (!roundTrip) c.detail += "round-trip failed on: " + printed;
      }
    }
    bool exitCodes = true, endToEnd = true;
    if (cli.empty()) {
      c.detail += "CLI path not supplied; exit-code matrix skipped; ";
      exitCodes = endToEnd = false;
    } else {
      const std::string alg = "/tmp/bvjet_affine_algebra.txt";
      {
        std::ofstream out(alg);
        out << "dim 2\nf 2 1 2 1\n";  // [e1,e2] = e2: valid but not traceless
      }
      struct Case {
        std::string args;
        int expected;
      };
      const std::vector<Case> matrix = {
          {"verify counterexample", 0},
          {"laplacian --f q_xx", 0},
          {"verify " /*missing suite*/, 2},
          {"verify nonsense-suite", 2},
          {"frobnicate", 2},
          {"bracket --f \"sin(p)\" --g \"q\"", 2},
          {"verify --fields \" \" all", 0},
          {"yangmills --algebra " + alg + " --dim 1", 1},
      };
      for (const auto& m : matrix) {
        const int got = runCli(cli, m.args);
        if (got != m.expected) {
          exitCodes = false;
          c.detail += "exit(" + m.args + ") = " + std::to_string(got) + " want " +
                      std::to_string(m.expected) + "; ";
        }
      }
      endToEnd = runCli(cli, "verify all") == 0;
      if (!endToEnd) c.detail += "verify all did not come back green; ";
    }
    c.ms = msSince(t0);
    c.pass = roundTrip && exitCodes && endToEnd;
    results.push_back(c);
  }

  bool all = true;
  for (const auto& c : results) {
    all = all && c.pass;
    std::printf("%-72s %s  (%ld ms%s)\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.ms,
                c.budgetMs ? (" / budget " + std::to_string(c.budgetMs)).c_str() : "");
    if (!c.pass && !c.detail.empty()) std::printf("    %s\n", c.detail.c_str());
  }
  std::printf("acceptance: %s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
