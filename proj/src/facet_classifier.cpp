#include "bellforge/facet_classifier.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "bellforge/bounds.hpp"
#include "bellforge/parallel.hpp"
#include "bellforge/quantum_value.hpp"
#include "bellforge/selftest.hpp"

namespace bellforge {

namespace {

std::vector<long long> shape_key(const BellExpression& e) {
  std::vector<long long> out;
  out.reserve(e.key_count() + 1);
  out.push_back(e.common_shift());
  for (long long v : e.scaled_numerators()) out.push_back(v);
  return out;
}

BellExpression expression_of(int n, std::uint64_t idx) {
  SignTable t;
  t.n = n;
  t.bits.assign(size_t{1} << n, 0);
  for (size_t s = 0; s < t.bits.size(); ++s) t.bits[s] = static_cast<std::uint8_t>((idx >> s) & 1);
  return wwzb_from_sign_table(t);
}

// table-space images of the generators; bit s of the packed index is S(s)

std::uint64_t table_swap_setting(std::uint64_t t, std::uint32_t S, int b) {
  std::uint64_t out = 0;
  for (std::uint32_t s = 0; s < S; ++s) out |= (((t >> s) ^ (s >> b)) & 1u) << s;
  return out;
}

std::uint64_t table_neg_primed(std::uint64_t t, std::uint32_t S, int b) {
  std::uint64_t out = 0;
  for (std::uint32_t s = 0; s < S; ++s) out |= ((t >> (s ^ (1u << b))) & 1u) << s;
  return out;
}

std::uint64_t table_transpose(std::uint64_t t, std::uint32_t S, int b) {
  std::uint64_t out = 0;
  for (std::uint32_t s = 0; s < S; ++s) {
    const std::uint32_t b0 = (s >> b) & 1u;
    const std::uint32_t b1 = (s >> (b + 1)) & 1u;
    const std::uint32_t img = (s & ~((1u << b) | (1u << (b + 1)))) | (b0 << (b + 1)) | (b1 << b);
    out |= ((t >> img) & 1u) << s;
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> table_orbits(int n) {
  const std::uint32_t S = std::uint32_t{1} << n;
  const std::uint64_t T = std::uint64_t{1} << S;
  const std::uint64_t full = T - 1;
  std::vector<char> seen(T, 0);
  std::vector<std::vector<std::uint64_t>> orbits;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t seed = 0; seed < T; ++seed) {
    if (seen[seed]) continue;
    orbits.emplace_back();
    std::vector<std::uint64_t>& orbit = orbits.back();
    queue.assign(1, seed);
    seen[seed] = 1;
    while (!queue.empty()) {
      const std::uint64_t t = queue.back();
      queue.pop_back();
      orbit.push_back(t);
      std::uint64_t next[16];
      int count = 0;
      for (int b = 0; b < n; ++b) {
        next[count++] = table_swap_setting(t, S, b);
        const std::uint64_t np = table_neg_primed(t, S, b);
        next[count++] = np;
        next[count++] = np ^ full;  // unprimed negation = primed negation + global
      }
      for (int b = 0; b + 1 < n; ++b) next[count++] = table_transpose(t, S, b);
      next[count++] = t ^ full;
      for (int i = 0; i < count; ++i) {
        if (!seen[next[i]]) {
          seen[next[i]] = 1;
          queue.push_back(next[i]);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
  }
  return orbits;
}

BellExpression unbalanced_printed() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic(3));
  e.set_coeff(0b001, Dyadic(1));
  e.set_coeff(0b010, Dyadic(1));
  e.set_coeff(0b100, Dyadic(1));
  e.set_coeff(0b011, Dyadic(-1));
  e.set_coeff(0b101, Dyadic(-1));
  e.set_coeff(0b110, Dyadic(-1));
  e.set_coeff(0b111, Dyadic(1));
  return e;
}

BellExpression extended_chsh_printed() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic::scaled(1, 1));
  e.set_coeff(0b100, Dyadic::scaled(1, 1));
  e.set_coeff(0b011, Dyadic::scaled(1, 1));
  e.set_coeff(0b111, Dyadic::scaled(-1, 1));
  return e;
}

BellExpression chsh_like_printed() {
  BellExpression e(3);
  e.set_coeff(0b000, Dyadic::scaled(1, 1));
  e.set_coeff(0b010, Dyadic::scaled(1, 1));
  e.set_coeff(0b100, Dyadic::scaled(1, 1));
  e.set_coeff(0b110, Dyadic::scaled(-1, 1));
  return e;
}

BellExpression single_correlator(int n) {
  BellExpression e(n);
  e.set_coeff(0, Dyadic(1));
  return e;
}

}  // namespace

std::vector<SignTable> enumerate_sign_tables(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_sign_tables: one to four parties");
  const std::uint32_t S = std::uint32_t{1} << n;
  const std::uint64_t T = std::uint64_t{1} << S;
  std::vector<SignTable> out;
  out.reserve(T);
  for (std::uint64_t idx = 0; idx < T; ++idx) {
    SignTable t;
    t.n = n;
    t.bits.assign(S, 0);
    for (std::uint32_t s = 0; s < S; ++s) t.bits[s] = static_cast<std::uint8_t>((idx >> s) & 1);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<long long> canonical_form(const BellExpression& e) {
  const int n = e.n();
  if (n < 1 || n > 4) throw std::invalid_argument("canonical_form: one to four parties");
  const std::uint32_t K = std::uint32_t{1} << n;
  const long long shift = e.common_shift();
  const std::vector<long long> nums = e.scaled_numerators();

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> best;
  std::vector<long long> cur(K + 1);
  std::array<std::uint32_t, 16> pmap{};
  do {
    for (std::uint32_t k = 0; k < K; ++k) {
      std::uint32_t img = 0;
      for (int p = 0; p < n; ++p) img |= ((k >> p) & 1u) << perm[p];
      pmap[k] = img;
    }
    for (std::uint32_t w = 0; w < K; ++w) {
      for (std::uint32_t u = 0; u < K; ++u) {
        for (std::uint32_t v = 0; v < K; ++v) {
          for (int g = 0; g < 2; ++g) {
            cur[0] = shift;
            for (std::uint32_t k = 0; k < K; ++k) {
              long long val = nums[k];
              const std::uint32_t m = (~k & u) | (k & v);
              if (((std::popcount(m) & 1) ^ g) != 0) val = -val;
              cur[1 + pmap[k ^ w]] = val;
            }
            if (best.empty() || cur < best) best = cur;
          }
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Classification classify(int n) {
  if (n < 2 || n > 3) throw std::invalid_argument("classify: two or three parties only");
  const std::vector<std::vector<std::uint64_t>> orbits = table_orbits(n);
  const std::uint64_t T = std::uint64_t{1} << (std::uint32_t{1} << n);

  // independent route: canonical forms must reproduce the orbit partition
  std::vector<std::vector<long long>> canon_of(T);
  parallel_for(static_cast<size_t>(T),
               [&](size_t t) { canon_of[t] = canonical_form(expression_of(n, t)); });
  for (const std::vector<std::uint64_t>& orbit : orbits)
    for (std::uint64_t m : orbit)
      if (canon_of[m] != canon_of[orbit[0]])
        throw std::logic_error("classify: canonical form differs inside an orbit");
  {
    std::vector<std::vector<long long>> reps;
    reps.reserve(orbits.size());
    for (const std::vector<std::uint64_t>& orbit : orbits) reps.push_back(canon_of[orbit[0]]);
    std::sort(reps.begin(), reps.end());
    if (std::adjacent_find(reps.begin(), reps.end()) != reps.end())
      throw std::logic_error("classify: two orbits share a canonical form");
  }

  struct Anchor {
    std::string label;
    std::vector<long long> canon;
  };
  std::vector<Anchor> anchors;
  if (n == 2) {
    anchors.push_back({"chsh", canonical_form(mabk(2))});
    anchors.push_back({"trivial", canonical_form(single_correlator(2))});
  } else {
    anchors.push_back({"mermin", canonical_form(mabk(3))});
    anchors.push_back({"unbalanced", canonical_form(Dyadic::scaled(1, 2) * unbalanced_printed())});
    anchors.push_back({"extended-chsh", canonical_form(extended_chsh_printed())});
    anchors.push_back({"chsh-like", canonical_form(chsh_like_printed())});
    anchors.push_back({"trivial", canonical_form(single_correlator(3))});
  }

  Classification out;
  out.n = n;
  for (const std::vector<std::uint64_t>& orbit : orbits) {
    FacetClass fc;
    fc.members = orbit;
    const std::vector<long long>& canon = canon_of[orbit[0]];
    for (std::uint64_t m : orbit) {
      BellExpression e = expression_of(n, m);
      if (shape_key(e) == canon) {
        fc.representative = e;
        break;
      }
    }
    if (fc.representative.n() == 0)
      throw std::logic_error("classify: orbit has no member in canonical shape");
    fc.label = "class-" + std::to_string(out.classes.size());
    for (const Anchor& a : anchors) {
      if (a.canon == canon) {
        fc.label = a.label;
        break;
      }
    }
    BoundReport br = local_bound(fc.representative, 1);
    fc.local = *br.local;
    QuantumValueResult fast = optimize_angles(fc.representative);
    QuantumValueResult slow = seesaw_oracle(fc.representative);
    fc.value_fast = fast.value;
    fc.value_oracle = slow.value;
    fc.residuals = anticommutation_residuals(fast.angles);
    fc.verdict = uniqueness_scan(fc.representative).verdict;
    out.classes.push_back(std::move(fc));
  }
  return out;
}

std::string classify_csv(const Classification& c) {
  std::string out =
      "label,orbit_size,local_bound,quantum_value_fastpath,quantum_value_oracle,residuals,verdict\n";
  char buf[64];
  for (const FacetClass& fc : c.classes) {
    out += fc.label;
    out += ",";
    out += std::to_string(fc.members.size());
    out += ",";
    out += fc.local.to_string();
    out += ",";
    std::snprintf(buf, sizeof buf, "%.12g", fc.value_fast);
    out += buf;
    out += ",";
    std::snprintf(buf, sizeof buf, "%.12g", fc.value_oracle);
    out += buf;
    out += ",";
    for (size_t i = 0; i < fc.residuals.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6g", fc.residuals[i]);
      if (i) out += ";";
      out += buf;
    }
    out += ",";
    out += fc.verdict;
    out += "\n";
  }
  return out;
}

BellExpression tripartite_representative(const std::string& label) {
  if (label == "mermin") return mabk(3);
  if (label == "unbalanced") return unbalanced_printed();
  if (label == "extended-chsh") return extended_chsh_printed();
  if (label == "chsh-like") return chsh_like_printed();
  if (label == "trivial") return single_correlator(3);
  throw std::invalid_argument("tripartite_representative: unknown label " + label);
}

}  // namespace bellforge
