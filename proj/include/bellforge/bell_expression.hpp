#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellforge/dyadic.hpp"

namespace bellforge {

inline constexpr int kMaxParties = 12;

// Bit conventions, used everywhere:
//  - party j (0-based) owns bit (n-1-j) of an index, so the string form reads
//    party 1 first;
//  - in a setting key k, bit value 1 means the primed observable;
//  - in a sign-table index s, bit value 1 means s_j = -1.
std::string index_bits(std::uint32_t value, int n);
std::uint32_t parse_index_bits(const std::string& bits);

// S : {+1,-1}^n -> {+1,-1}, stored as one bit per argument tuple.
struct SignTable {
  int n = 0;
  std::vector<std::uint8_t> bits;  // size 2^n; 0 encodes +1

  int sign(std::uint32_t s) const { return bits[s] ? -1 : +1; }
  std::string bits_string() const;
  static SignTable from_bits(int n, const std::string& bits);

  friend bool operator==(const SignTable&, const SignTable&) = default;
};

// Multilinear correlation polynomial: sum_k c_k <prod_j O_j^(k_j)> with exact
// dyadic coefficients, stored densely over all 2^n setting keys.
class BellExpression {
 public:
  BellExpression() = default;
  explicit BellExpression(int n);

  int n() const { return n_; }
  std::uint32_t key_count() const { return static_cast<std::uint32_t>(coeffs_.size()); }
  const Dyadic& coeff(std::uint32_t k) const { return coeffs_[k]; }
  void set_coeff(std::uint32_t k, const Dyadic& c) { coeffs_[k] = c; }
  int nonzero_count() const;

  // Smallest common denominator view: coeff(k) = scaled_numerator(k) / 2^common_shift.
  int common_shift() const;
  std::vector<long long> scaled_numerators() const;

  friend BellExpression operator+(const BellExpression& a, const BellExpression& b);
  friend BellExpression operator-(const BellExpression& a, const BellExpression& b);
  friend BellExpression operator*(const Dyadic& s, const BellExpression& e);
  friend bool operator==(const BellExpression&, const BellExpression&) = default;

 private:
  int n_ = 0;
  std::vector<Dyadic> coeffs_;
};

// Forward transform of a sign table: c_k = 2^-n sum_s S(s) prod_j s_j^(k_j).
BellExpression wwzb_from_sign_table(const SignTable& table);

// Inverse transform. Succeeds exactly when the expression sits in the
// sign-table family (every reconstructed value is +-1); returns false otherwise.
bool sign_table_from_expression(const BellExpression& e, SignTable& out);

// Exchanges primed and unprimed settings for every party (key complement).
BellExpression prime_partner(const BellExpression& e);

// n-party chain built by the two-term recursion from the single-party seed;
// cross-checked coefficient-by-coefficient against the closed form on every call.
BellExpression mabk(int n);
BellExpression mabk_closed_form(int n);

// Composition of the chain and its partner with the printed parity-dependent
// prefactors. sign is +1 or -1.
BellExpression svetlichny(int n, int sign);

struct QuadraticExpression {
  BellExpression first;
  BellExpression second;  // always prime_partner(first)
  Dyadic biseparable_bound;
  Dyadic quantum_bound;
};

enum class UffinkBase { mabk, svetlichny };

// Quadratic witness <first>^2 + <second>^2 with its stored bound constants. n >= 3.
QuadraticExpression uffink(int n, UffinkBase base, int svet_sign = +1);

}  // namespace bellforge
