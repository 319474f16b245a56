// Machine-readable verification reports.
#pragma once

#include <string>
#include <vector>

namespace bvjet {

struct CheckRecord {
  std::string name;
  std::string anchor;  // stable machine identifier of the check
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  long elapsedMs = 0;

  bool allPass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, std::string anchor, bool pass, std::string detail = "");

  std::string text() const;
  std::string json() const;
};

}  // namespace bvjet
