#pragma once

#include <string>
#include <vector>

namespace riffle {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-checks the closed forms and recursions against exhaustive
/// enumeration on small decks. Takes a few seconds.
std::vector<CheckResult> run_self_checks();

}  // namespace riffle
