// Verification suites behind `bvjet verify <suite>` and the acceptance run.
#pragma once

#include "bvjet/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bvjet {

const std::vector<std::string>& verifySuites();

/// Runs one named suite ("schouten", "laplacian", "counterexample",
/// "excounter2", "yangmills", "qme" or "all") with the given random seed.
/// An empty fieldDecls keeps the built-in scalar BV pair; declarations are
/// parsed as in the CLI header (`q parity 0; p antifield_of q`).
Report runVerifySuite(const std::string& suite, uint64_t seed,
                      const std::string& fieldDecls = "", int baseDim = 1,
                      int qmeOrder = 3);

}  // namespace bvjet
