#include "bellforge/bounds.hpp"

#include <bit>
#include <stdexcept>

namespace bellforge {

namespace {

struct Term {
  std::uint32_t key;
  long long numerator;
};

Strategy decode_strategy(std::uint64_t index, int n) {
  // index bits, most significant first: (a_1, a'_1, a_2, a'_2, ...), set bit = -1.
  Strategy s;
  s.party_assignments.resize(n);
  for (int j = 0; j < n; ++j) {
    const int a_bit = static_cast<int>(index >> (2 * (n - j) - 1) & 1);
    const int ap_bit = static_cast<int>(index >> (2 * (n - j) - 2) & 1);
    s.party_assignments[j] = {a_bit ? -1 : 1, ap_bit ? -1 : 1};
  }
  return s;
}

}  // namespace

Dyadic evaluate_strategy(const BellExpression& e, const Strategy& s) {
  if (static_cast<int>(s.party_assignments.size()) != e.n())
    throw std::invalid_argument("evaluate_strategy: party count mismatch");
  Dyadic total(0);
  const std::uint32_t keys = e.key_count();
  for (std::uint32_t k = 0; k < keys; ++k) {
    if (e.coeff(k).is_zero()) continue;
    int prod = 1;
    for (int j = 0; j < e.n(); ++j)
      prod *= s.party_assignments[j][(k >> (e.n() - 1 - j)) & 1];
    total += Dyadic(prod) * e.coeff(k);
  }
  return total;
}

BoundReport local_bound(const BellExpression& e, int max_strategies) {
  const int n = e.n();
  const std::uint32_t mask = e.key_count() - 1;

  std::vector<Term> terms;
  const int shift = e.common_shift();
  const auto numerators = e.scaled_numerators();
  for (std::uint32_t k = 0; k <= mask; ++k)
    if (numerators[k] != 0) terms.push_back({k, numerators[k]});

  BoundReport report;
  long long best = 0;
  bool have_best = false;
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // Unpack the interleaved strategy bits into per-setting negation masks
    // (party j owns key bit n-1-j).
    std::uint32_t neg_a = 0, neg_ap = 0;
    for (int j = 0; j < n; ++j) {
      neg_a |= static_cast<std::uint32_t>(idx >> (2 * (n - j) - 1) & 1) << (n - 1 - j);
      neg_ap |= static_cast<std::uint32_t>(idx >> (2 * (n - j) - 2) & 1) << (n - 1 - j);
    }
    long long value = 0;
    for (const Term& t : terms) {
      const std::uint32_t minus = (~t.key & mask & neg_a) | (t.key & neg_ap);
      value += std::popcount(minus) & 1 ? -t.numerator : t.numerator;
    }
    if (!have_best || value > best) {
      best = value;
      have_best = true;
      report.achieving_count = 1;
      report.strategies.clear();
      report.strategies.push_back(decode_strategy(idx, n));
    } else if (value == best) {
      ++report.achieving_count;
      if (static_cast<int>(report.strategies.size()) < max_strategies)
        report.strategies.push_back(decode_strategy(idx, n));
    }
  }
  report.local = Dyadic::scaled(best, shift);
  return report;
}

BoundReport reference_bounds(Family family, int n) {
  if (n < 2 || n > kMaxParties) throw std::invalid_argument("reference_bounds: n out of range");
  BoundReport r;
  switch (family) {
    case Family::mabk:
      r.local = Dyadic(1);
      r.biseparable = Sqrt2Power{n - 2};
      r.quantum = Sqrt2Power{n - 1};
      break;
    case Family::svetlichny:
      r.biseparable = Sqrt2Power{2 * (n - 1)};
      r.quantum = Sqrt2Power{2 * n - 1};
      break;
    case Family::uffink_m:
      if (n < 3) throw std::invalid_argument("reference_bounds: quadratic families need n >= 3");
      r.biseparable = Sqrt2Power{2 * (n - 2)};
      r.quantum = Sqrt2Power{2 * (n - 1)};
      break;
    case Family::uffink_s:
      if (n < 3) throw std::invalid_argument("reference_bounds: quadratic families need n >= 3");
      r.biseparable = Sqrt2Power{2 * (2 * n - 2)};
      r.quantum = Sqrt2Power{2 * (2 * n - 1)};
      break;
  }
  return r;
}

}  // namespace bellforge
