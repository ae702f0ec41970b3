#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellforge/bell_expression.hpp"
#include "bellforge/dyadic.hpp"

namespace bellforge {

// All 2^(2^n) sign tables, indexed by the packed bit pattern. n <= 4.
std::vector<SignTable> enumerate_sign_tables(int n);

// Smallest (common_shift, scaled numerators) image of the expression under
// party permutations, per-party setting swaps, per-party observable
// negations, and the global sign. Two sign-table expressions are equivalent
// exactly when their canonical forms match. n <= 4.
std::vector<long long> canonical_form(const BellExpression& e);

struct FacetClass {
  std::string label;
  std::vector<std::uint64_t> members;  // packed table indices, ascending
  BellExpression representative;       // the member realizing the canonical form
  Dyadic local;                        // exact classical bound, orbit constant
  double value_fast = 0;               // anti-diagonal route on the representative
  double value_oracle = 0;             // dense see-saw route on the representative
  std::vector<double> residuals;       // |cos theta_j| at the fast-path optimum
  std::string verdict;                 // uniqueness scan on the representative
};

struct Classification {
  int n = 0;
  std::vector<FacetClass> classes;  // ordered by smallest member index
};

// Orbit partition of every sign table under the relabeling group, with the
// per-class bounds, values and self-test verdicts. The orbit search and the
// canonical-form matching are independent routes; they are cross-checked on
// every call and a mismatch throws. n is 2 or 3.
Classification classify(int n);

// Byte-deterministic CSV rendering, one row per class.
std::string classify_csv(const Classification& c);

// Named three-party representative at its printed scale.
BellExpression tripartite_representative(const std::string& label);

}  // namespace bellforge
