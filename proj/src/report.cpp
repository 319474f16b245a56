#include "bvjet/report.hpp"

#include <json.hpp>

#include <sstream>

namespace bvjet {

void Report::add(std::string name, std::string anchor, bool pass, std::string detail) {
  checks.push_back({std::move(name), std::move(anchor), pass, std::move(detail)});
}

std::string Report::text() const {
  std::ostringstream os;
  os << "== " << command << " ==\n";
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) os << "\n       " << c.detail;
    os << "\n";
  }
  os << (allPass() ? "all checks passed" : "some checks FAILED") << " (" << checks.size()
     << " checks, " << elapsedMs << " ms)\n";
  return os.str();
}

std::string Report::json() const {
  nlohmann::json j;
  j["command"] = command;
  j["elapsed_ms"] = elapsedMs;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["verdict"] = c.pass ? "pass" : "fail";
    jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

}  // namespace bvjet
