#pragma once

#include <string>
#include <vector>

namespace bellforge {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured numbers, filled whether passing or not
};

// Runs the full acceptance battery in criterion order. Every check computes
// its quantities fresh; nothing is read from fixtures.
std::vector<CriterionResult> run_acceptance();

}  // namespace bellforge
