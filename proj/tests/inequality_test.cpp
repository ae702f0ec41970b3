#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "bellforge/bell_expression.hpp"
#include "bellforge/dyadic.hpp"
#include "bellforge/parallel.hpp"

using namespace bellforge;

namespace {

const Dyadic kHalf = Dyadic::scaled(1, 1);

SignTable random_table(int n, std::mt19937_64& rng) {
  SignTable t;
  t.n = n;
  t.bits.assign(size_t{1} << n, 0);
  for (auto& b : t.bits) b = static_cast<uint8_t>(rng() & 1);
  return t;
}

}  // namespace

TEST_CASE("dyadic arithmetic is exact") {
  Dyadic a = Dyadic::parse("3/8");
  CHECK(a.num() == 3);
  CHECK(a.shift() == 3);
  CHECK(a.to_string() == "3/8");
  CHECK(Dyadic::parse("-6/4").to_string() == "-3/2");
  CHECK(Dyadic(5).to_string() == "5/1");
  CHECK((a + a).to_string() == "3/4");
  CHECK((a - Dyadic::parse("1/8")).to_string() == "1/4");
  CHECK((a * Dyadic(2)).to_string() == "3/4");
  CHECK((-a).num() == -3);
  CHECK(Dyadic::scaled(1, 1) + Dyadic::scaled(1, 1) == Dyadic(1));
  CHECK(Dyadic::parse("7/8") < Dyadic(1));
  CHECK(Dyadic::parse("-1/2") < Dyadic::parse("1/4"));
  CHECK(Dyadic::parse("0/4").is_zero());
  CHECK(Dyadic::parse("1/2").to_double() == 0.5);
  CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::parse(""), std::invalid_argument);
}

TEST_CASE("sqrt2 powers format as exact radicals") {
  CHECK(Sqrt2Power{0}.to_string() == "1/1");
  CHECK(Sqrt2Power{2}.to_string() == "2/1");
  CHECK(Sqrt2Power{1}.to_string() == "sqrt(2)");
  CHECK(Sqrt2Power{3}.to_string() == "2*sqrt(2)");
  CHECK(Sqrt2Power{5}.to_string() == "4*sqrt(2)");
  CHECK(Sqrt2Power{4}.to_double() == 4.0);
  CHECK(Sqrt2Power{3}.to_double() == doctest::Approx(2.8284271247461903).epsilon(1e-15));
}

TEST_CASE("two-party transform recovers the tilted game form") {
  // all-plus except the doubly primed setting
  SignTable t = SignTable::from_bits(2, "0001");
  BellExpression e = wwzb_from_sign_table(t);
  CHECK(e.coeff(0b00) == kHalf);
  CHECK(e.coeff(0b01) == kHalf);
  CHECK(e.coeff(0b10) == kHalf);
  CHECK(e.coeff(0b11) == -kHalf);
  CHECK(e == mabk(2));
}

TEST_CASE("majority table transforms to the three-party chain form") {
  SignTable t = SignTable::from_bits(3, "00010111");
  BellExpression e = wwzb_from_sign_table(t);
  CHECK(e.coeff(0b000).is_zero());
  CHECK(e.coeff(0b001) == kHalf);
  CHECK(e.coeff(0b010) == kHalf);
  CHECK(e.coeff(0b100) == kHalf);
  CHECK(e.coeff(0b011).is_zero());
  CHECK(e.coeff(0b101).is_zero());
  CHECK(e.coeff(0b110).is_zero());
  CHECK(e.coeff(0b111) == -kHalf);
  CHECK(e == mabk(3));
  CHECK(e.nonzero_count() == 4);
}

TEST_CASE("transform round-trips on every tripartite table") {
  for (int idx = 0; idx < 256; ++idx) {
    SignTable t;
    t.n = 3;
    t.bits.resize(8);
    for (int s = 0; s < 8; ++s) t.bits[s] = static_cast<uint8_t>((idx >> s) & 1);
    BellExpression e = wwzb_from_sign_table(t);
    SignTable back;
    REQUIRE(sign_table_from_expression(e, back));
    CHECK(back == t);
  }
}

TEST_CASE("transform round-trips on random larger tables") {
  std::mt19937_64 rng(mix_seed(kDefaultSeed, 10));
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 4 + (trial % 2);
    SignTable t = random_table(n, rng);
    SignTable back;
    REQUIRE(sign_table_from_expression(wwzb_from_sign_table(t), back));
    CHECK(back == t);
  }
}

TEST_CASE("expressions outside the sign-table family are rejected") {
  BellExpression e(2);
  e.set_coeff(0b00, Dyadic(1));
  e.set_coeff(0b01, Dyadic(1));  // reconstructed values land on {2, 0}
  SignTable back;
  CHECK(!sign_table_from_expression(e, back));
  BellExpression h(2);
  h.set_coeff(0b00, Dyadic::scaled(1, 1));  // wrong magnitude
  CHECK(!sign_table_from_expression(h, back));
  CHECK(sign_table_from_expression(mabk(4), back));
  CHECK(wwzb_from_sign_table(back) == mabk(4));
}

TEST_CASE("prime partner swaps every setting") {
  BellExpression m2 = mabk(2);
  BellExpression p = prime_partner(m2);
  CHECK(p.coeff(0b00) == -kHalf);
  CHECK(p.coeff(0b01) == kHalf);
  CHECK(p.coeff(0b10) == kHalf);
  CHECK(p.coeff(0b11) == kHalf);
  CHECK(prime_partner(p) == m2);
  for (int n = 2; n <= 6; ++n) CHECK(prime_partner(prime_partner(mabk(n))) == mabk(n));
}

TEST_CASE("chain recursion agrees with the closed form") {
  for (int n = 1; n <= 8; ++n) {
    BellExpression m = mabk(n);        // throws internally on any mismatch
    CHECK(m == mabk_closed_form(n));
  }
  CHECK(mabk(1).coeff(0) == Dyadic(1));
  CHECK(mabk(1).coeff(1).is_zero());
}

TEST_CASE("chain coefficient census") {
  for (int n = 2; n <= 8; ++n) {
    BellExpression m = mabk(n);
    long long expected = (n % 2 == 1) ? (1LL << (n - 1)) : (1LL << n);
    CHECK(m.nonzero_count() == expected);
    // uniform magnitude, squares sum to one
    Dyadic mag = Dyadic::scaled(1, (n % 2 == 1) ? (n - 1) / 2 : n / 2);
    Dyadic sum_sq(0);
    for (uint32_t k = 0; k < m.key_count(); ++k) {
      Dyadic c = m.coeff(k);
      if (!c.is_zero()) CHECK(c.abs() == mag);
      sum_sq += c * c;
    }
    CHECK(sum_sq == Dyadic(1));
  }
}

TEST_CASE("hybrid forms at small party count") {
  CHECK(svetlichny(2, +1) == Dyadic(-1) * mabk(2));
  CHECK(svetlichny(2, -1) == prime_partner(mabk(2)));

  BellExpression s3 = svetlichny(3, +1);
  BellExpression m3 = mabk(3);
  BellExpression expected = Dyadic(-4) * (m3 + prime_partner(m3));
  CHECK(s3 == expected);
  CHECK(s3.coeff(0b000) == Dyadic(2));
  CHECK(s3.coeff(0b001) == Dyadic(-2));
  CHECK(s3.coeff(0b111) == Dyadic(2));
  CHECK(prime_partner(s3) == s3);

  BellExpression s3m = svetlichny(3, -1);
  CHECK(s3m == m3 - prime_partner(m3));

  CHECK(svetlichny(4, +1) == Dyadic(-2) * mabk(4));
  CHECK(svetlichny(4, -1) == Dyadic(-2) * prime_partner(mabk(4)));
}

TEST_CASE("quadratic witnesses pair an expression with its partner") {
  for (int n = 3; n <= 6; ++n) {
    QuadraticExpression q = uffink(n, UffinkBase::mabk);
    CHECK(q.first == mabk(n));
    CHECK(q.second == prime_partner(mabk(n)));
    CHECK(q.biseparable_bound == Dyadic(1LL << (n - 2)));
    CHECK(q.quantum_bound == Dyadic(1LL << (n - 1)));
  }
  QuadraticExpression qs = uffink(3, UffinkBase::svetlichny, +1);
  CHECK(qs.first == svetlichny(3, +1));
  CHECK(qs.second == prime_partner(svetlichny(3, +1)));
  CHECK(qs.biseparable_bound == Dyadic(16));
  CHECK(qs.quantum_bound == Dyadic(32));
  CHECK_THROWS_AS(uffink(2, UffinkBase::mabk), std::invalid_argument);
}

TEST_CASE("expression algebra and serial form") {
  BellExpression m = mabk(3);
  CHECK(m.common_shift() == 1);
  auto nums = m.scaled_numerators();
  CHECK(nums[1] == 1);
  CHECK(nums[7] == -1);
  CHECK((m - m).nonzero_count() == 0);
  CHECK(Dyadic(2) * m + m == Dyadic(3) * m);
  CHECK(index_bits(0b101, 3) == "101");
  CHECK(parse_index_bits("101") == 0b101u);
}
