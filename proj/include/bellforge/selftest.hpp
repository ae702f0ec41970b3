#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellforge/bell_expression.hpp"
#include "bellforge/quantum_value.hpp"

namespace bellforge {

// All GHZ branches whose antidiagonal block attains the optimum at the given
// angles (up to a relative tie window), smallest branch index first.
std::vector<GhzDescriptor> extract_maximizer(const BellExpression& e, const AngleConfig& angles);

// Per-party |cos theta_j|: zero exactly when the party's observable pair
// anticommutes on the equator.
std::vector<double> anticommutation_residuals(const AngleConfig& angles);

// Overlap of the branch state with the top eigenspace of the dense operator.
double ghz_fidelity(const BellExpression& e, const AngleConfig& angles, const GhzDescriptor& d);

struct UniquenessOptions {
  double value_tol = 1e-8;   // relative window around the optimum
  int samples = 160;         // random restarts plus walk proposals
  std::uint64_t seed = kDefaultSeed;
};

struct SelftestReport {
  double quantum_value = 0;
  double local_value = 0;
  double fidelity = 0;
  std::vector<double> residuals;
  std::vector<GhzDescriptor> maximizers;
  std::vector<AngleConfig> optimal_angle_sets;  // reduced cluster representatives
  std::vector<std::string> constraints_detected;
  std::vector<int> involved_parties;  // 0-based, both settings appear
  std::vector<int> free_parties;      // 0-based, angle is pure gauge or undetermined
  long distinct_configs = 0;
  std::string verdict;  // "none" | "full-selftest" | "partial" | "state-only"
};

// Scans the optimal-angle manifold from seeded restarts and local walks,
// reduces configurations by the expression's numerically validated sign
// symmetries, clusters them, and grades the rigidity of the optimum.
SelftestReport uniqueness_scan(const BellExpression& e, const UniquenessOptions& opts = {});

}  // namespace bellforge
