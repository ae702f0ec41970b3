#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bellforge/bell_expression.hpp"
#include "bellforge/dyadic.hpp"

namespace bellforge {

// One deterministic local strategy: per party the (unprimed, primed) outcomes.
struct Strategy {
  std::vector<std::array<int, 2>> party_assignments;
};

struct BoundReport {
  std::optional<Dyadic> local;
  std::vector<Strategy> strategies;  // achieving, in enumeration order
  long long achieving_count = 0;
  std::optional<Sqrt2Power> biseparable;
  std::optional<Sqrt2Power> quantum;
};

// Exact classical bound: max over all 4^n deterministic assignments, enumerated
// in lexicographic order of (a_1, a'_1, ..., a_n, a'_n) with +1 before -1.
// Up to max_strategies achieving assignments are listed, first-found first.
BoundReport local_bound(const BellExpression& e, int max_strategies = 16);

// Evaluates the expression on one strategy, exactly.
Dyadic evaluate_strategy(const BellExpression& e, const Strategy& s);

enum class Family { mabk, svetlichny, uffink_m, uffink_s };

// Stated bound constants for the built-in families, verbatim; never computed.
// Only the chain family has a stated local constant.
BoundReport reference_bounds(Family family, int n);

}  // namespace bellforge
