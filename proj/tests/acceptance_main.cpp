// acceptance gate: one line per criterion, nonzero exit if any fails
#include <cstdio>

#include "bellforge/acceptance.hpp"

int main() {
  const auto results = bellforge::run_acceptance();
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d: %s -- %s\n", r.passed ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
