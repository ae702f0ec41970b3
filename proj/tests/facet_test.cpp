#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "bellforge/bounds.hpp"
#include "bellforge/facet_classifier.hpp"
#include "bellforge/quantum_value.hpp"

using namespace bellforge;

namespace {

BellExpression expression_of_index(int n, uint64_t idx) {
  SignTable t;
  t.n = n;
  t.bits.assign(size_t{1} << n, 0);
  for (size_t s = 0; s < t.bits.size(); ++s) t.bits[s] = static_cast<uint8_t>((idx >> s) & 1);
  return wwzb_from_sign_table(t);
}

}  // namespace

TEST_CASE("sign table enumeration") {
  CHECK(enumerate_sign_tables(2).size() == 16);
  std::vector<SignTable> all3 = enumerate_sign_tables(3);
  REQUIRE(all3.size() == 256);
  for (uint64_t idx : {uint64_t{0}, uint64_t{23}, uint64_t{255}}) {
    REQUIRE(all3[idx].bits.size() == 8);
    for (uint32_t s = 0; s < 8; ++s) CHECK(all3[idx].bits[s] == ((idx >> s) & 1));
  }
  CHECK_THROWS_AS(enumerate_sign_tables(5), std::invalid_argument);
}

TEST_CASE("canonical form is a relabeling invariant") {
  BellExpression m = mabk(3);
  std::vector<long long> base = canonical_form(m);
  CHECK(canonical_form(prime_partner(m)) == base);
  CHECK(canonical_form(Dyadic(-1) * m) == base);

  BellExpression single(3);
  single.set_coeff(0, Dyadic(1));
  CHECK(canonical_form(single) != base);
  CHECK_THROWS_AS(canonical_form(BellExpression(5)), std::invalid_argument);
}

TEST_CASE("tripartite classification") {
  Classification c = classify(3);
  REQUIRE(c.classes.size() == 5);

  size_t total = 0;
  int nontrivial = 0;
  for (const FacetClass& fc : c.classes) {
    total += fc.members.size();
    if (fc.label != "trivial") ++nontrivial;
    CHECK(fc.local == Dyadic(1));
    CHECK(std::abs(fc.value_fast - fc.value_oracle) <= 1e-6);
  }
  CHECK(total == 256);
  CHECK(nontrivial == 4);

  const char* labels[] = {"trivial", "unbalanced", "chsh-like", "extended-chsh", "mermin"};
  const size_t sizes[] = {16, 128, 48, 48, 16};
  const double values[] = {1.0, 5.0 / 3.0, std::sqrt(2.0), std::sqrt(2.0), 2.0};
  const char* verdicts[] = {"none", "state-only", "state-only", "partial", "full-selftest"};
  for (int i = 0; i < 5; ++i) {
    CAPTURE(i);
    CHECK(c.classes[i].label == labels[i]);
    CHECK(c.classes[i].members.size() == sizes[i]);
    CHECK(c.classes[i].value_fast == doctest::Approx(values[i]).epsilon(1e-9));
    CHECK(c.classes[i].verdict == verdicts[i]);
  }

  for (double r : c.classes[4].residuals) CHECK(r <= 1e-6);  // mermin pairs anticommute
  for (double r : c.classes[1].residuals) CHECK(r == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("class membership is orbit-constant") {
  Classification c = classify(3);
  for (const FacetClass& fc : c.classes) {
    std::vector<long long> canon = canonical_form(fc.representative);
    const size_t step = std::max<size_t>(1, fc.members.size() / 7);
    for (size_t i = 0; i < fc.members.size(); i += step) {
      BellExpression e = expression_of_index(3, fc.members[i]);
      CHECK(canonical_form(e) == canon);
      CHECK(*local_bound(e, 1).local == fc.local);
    }
    // the quantum value is a relabeling invariant too
    BellExpression mid = expression_of_index(3, fc.members[fc.members.size() / 2]);
    CHECK(optimize_angles(mid).value == doctest::Approx(fc.value_fast).epsilon(1e-9));
  }
}

TEST_CASE("two-party classification") {
  Classification c = classify(2);
  REQUIRE(c.classes.size() == 2);
  CHECK(c.classes[0].label == "trivial");
  CHECK(c.classes[0].members.size() == 8);
  CHECK(c.classes[0].verdict == "none");
  CHECK(c.classes[1].label == "chsh");
  CHECK(c.classes[1].members.size() == 8);
  CHECK(c.classes[1].value_fast == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(c.classes[1].verdict == "full-selftest");
  CHECK_THROWS_AS(classify(4), std::invalid_argument);
}

TEST_CASE("csv rendering is deterministic") {
  std::string a = classify_csv(classify(3));
  setenv("BELLFORGE_THREADS", "2", 1);
  std::string b = classify_csv(classify(3));
  unsetenv("BELLFORGE_THREADS");
  CHECK(a == b);
  CHECK(a.rfind("label,orbit_size,local_bound,quantum_value_fastpath,quantum_value_oracle,"
                "residuals,verdict\n", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 6);
  CHECK(a.find("mermin,16,1/1,2,2,") != std::string::npos);
  CHECK(a.find("unbalanced,128,1/1,") != std::string::npos);
}

TEST_CASE("printed representatives") {
  CHECK(tripartite_representative("mermin") == mabk(3));
  BellExpression u = tripartite_representative("unbalanced");
  CHECK(*local_bound(u, 1).local == Dyadic(4));
  CHECK(tripartite_representative("extended-chsh").nonzero_count() == 4);
  CHECK(tripartite_representative("chsh-like").nonzero_count() == 4);
  CHECK(tripartite_representative("trivial").nonzero_count() == 1);
  CHECK_THROWS_AS(tripartite_representative("junk"), std::invalid_argument);

  // printed and table-normalized unbalanced forms sit in the same class
  CHECK(canonical_form(Dyadic::scaled(1, 2) * u) ==
        canonical_form(expression_of_index(3, 1)));
}
