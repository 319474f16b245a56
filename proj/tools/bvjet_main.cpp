// bvjet: graded variational calculus on jet spaces of a BV bundle.
//
// Subcommands:
//   bracket    variational Schouten bracket of two densities
//   laplacian  BV-Laplacian of a density (jet or functional mode)
//   verify     run a named verification suite
//   yangmills  build a gauge BV action and check its master equations
//   qme        quantum layer: power lemmas, master equation, Omega
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 usage error.
#include <CLI11.hpp>

#include "bvjet/extended_functional.hpp"
#include "bvjet/hbar_series.hpp"
#include "bvjet/parser.hpp"
#include "bvjet/report.hpp"
#include "bvjet/verify.hpp"
#include "bvjet/yang_mills.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace bvjet;

struct CommonArgs {
  std::string fields = "q parity 0; p antifield_of q";
  int dim = 1;
  std::string jsonPath;
};

int finish(const Report& report, const std::string& jsonPath) {
  std::cout << report.text();
  if (!jsonPath.empty()) {
    std::ofstream out(jsonPath);
    if (!out) {
      std::cerr << "cannot write JSON report to " << jsonPath << "\n";
      return 2;
    }
    out << report.json() << "\n";
  }
  return report.allPass() ? 0 : 1;
}

long elapsedSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded variational calculus on jet spaces of a BV bundle"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string exprF, exprG, mode = "jet", suite, algebra = "su2";
  int ymDim = 2, qmeOrder = 3;

  auto addCommon = [&](CLI::App* cmd, bool withDim = true) {
    cmd->add_option("--fields", common.fields,
                    "field declarations, e.g. \"q parity 0; p antifield_of q\"");
    if (withDim) cmd->add_option("--dim", common.dim, "base dimension");
    cmd->add_option("--json", common.jsonPath, "write the report as JSON to this path");
  };

  CLI::App* bracket = app.add_subcommand("bracket", "Schouten bracket of two densities");
  addCommon(bracket);
  bracket->add_option("--f", exprF, "density of the first functional")->required();
  bracket->add_option("--g", exprG, "density of the second functional")->required();
  bracket->add_option("--mode", mode, "jet | functional")
      ->check(CLI::IsMember({"jet", "functional"}));

  CLI::App* laplacian = app.add_subcommand("laplacian", "BV-Laplacian of a density");
  addCommon(laplacian);
  laplacian->add_option("--f", exprF, "density of the functional")->required();
  laplacian->add_option("--mode", mode, "jet | functional")
      ->check(CLI::IsMember({"jet", "functional"}));

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  addCommon(verify);
  verify->add_option("suite", suite, "schouten | laplacian | counterexample | excounter2 | "
                                     "yangmills | qme | all")
      ->required();

  CLI::App* yangmills = app.add_subcommand("yangmills", "gauge-model master equations");
  addCommon(yangmills, false);
  yangmills->add_option("--algebra", algebra, "preset (su2, abelian<d>) or a spec file");
  yangmills->add_option("--dim", ymDim, "base dimension of the model");

  CLI::App* qme = app.add_subcommand("qme", "quantum master equation layer");
  addCommon(qme);
  qme->add_option("--order", qmeOrder, "series truncation order K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const uint64_t seed = RandomGen::seedFromEnv();
  try {
    if (bracket->parsed() || laplacian->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      Report report;
      ContentPtr content = parseFieldDecls(common.fields, common.dim);
      if (bracket->parsed()) {
        report.command = "bracket --mode " + mode;
        LocalFunctional F = LocalFunctional::block(parseDensityExpr(exprF, content));
        LocalFunctional G = LocalFunctional::block(parseDensityExpr(exprG, content));
        if (mode == "jet") {
          LocalFunctional r = schoutenJet(F, G);
          report.add("[[F,G]] = " + r.str(), "cli/bracket/jet", true);
        } else {
          ExtendedFunctional r = functionalSchouten(ExtendedFunctional::fromLocal(F),
                                                    ExtendedFunctional::fromLocal(G));
          report.add("[[F,G]] = " + r.str(), "cli/bracket/functional", true,
                     "diagonal restriction: " + restrictToDiagonal(r).str());
        }
      } else {
        report.command = "laplacian --mode " + mode;
        LocalFunctional F = LocalFunctional::block(parseDensityExpr(exprF, content));
        if (mode == "jet") {
          LocalFunctional r = laplacianJet(F);
          report.add("Delta F = " + r.str(), "cli/laplacian/jet", true,
                     functionalZero(r) ? "functional-equal to zero" : "nontrivial");
        } else {
          ExtendedFunctional r = functionalLaplacian(ExtendedFunctional::fromLocal(F));
          report.add("Delta F = " + r.str(), "cli/laplacian/functional", true,
                     "diagonal restriction: " + restrictToDiagonal(r).str());
        }
      }
      report.elapsedMs = elapsedSince(t0);
      return finish(report, common.jsonPath);
    }
    if (verify->parsed()) {
      bool fieldsGiven = verify->count("--fields") > 0;
      Report report = runVerifySuite(suite, seed, fieldsGiven ? common.fields : "", common.dim);
      return finish(report, common.jsonPath);
    }
    if (yangmills->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      Report report;
      report.command = "yangmills --algebra " + algebra + " --dim " + std::to_string(ymDim);
      LieAlgebraSpec spec = [&] {
        std::ifstream in(algebra);
        if (in) {
          std::stringstream ss;
          ss << in.rdbuf();
          return LieAlgebraSpec::parse(ss.str());
        }
        return LieAlgebraSpec::preset(algebra);
      }();
      YangMillsModel model(ymDim, spec);
      for (const auto& c : verifyLaplacianZero(model))
        report.add(c.name, "yangmills/laplacian", c.pass, c.detail);
      for (const auto& c : verifyClassicalMaster(model))
        report.add(c.name, "yangmills/master", c.pass, c.detail);
      report.elapsedMs = elapsedSince(t0);
      return finish(report, common.jsonPath);
    }
    if (qme->parsed()) {
      if (qmeOrder < 2) {
        std::cerr << "the truncation order must be at least 2\n";
        return 2;
      }
      Report report = runVerifySuite("qme", seed, "", 1, qmeOrder);
      report.command = "qme --order " + std::to_string(qmeOrder);
      return finish(report, common.jsonPath);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
