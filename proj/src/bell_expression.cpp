#include "bellforge/bell_expression.hpp"

#include <bit>
#include <stdexcept>

namespace bellforge {

namespace {

void check_party_count(int n) {
  if (n < 1 || n > kMaxParties)
    throw std::invalid_argument("party count " + std::to_string(n) + " out of range [1, " +
                                std::to_string(kMaxParties) + "]");
}

// In-place Walsh transform: out[k] = sum_s (-1)^popcount(k & s) in[s].
void walsh(std::vector<long long>& v) {
  for (std::size_t stride = 1; stride < v.size(); stride <<= 1) {
    for (std::size_t base = 0; base < v.size(); base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        const long long a = v[base + off], b = v[base + off + stride];
        v[base + off] = a + b;
        v[base + off + stride] = a - b;
      }
    }
  }
}

}  // namespace

std::string index_bits(std::uint32_t value, int n) {
  std::string s(n, '0');
  for (int j = 0; j < n; ++j)
    if (value >> (n - 1 - j) & 1u) s[j] = '1';
  return s;
}

std::uint32_t parse_index_bits(const std::string& bits) {
  std::uint32_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring: " + bits);
    v = v << 1 | (c == '1' ? 1u : 0u);
  }
  return v;
}

std::string SignTable::bits_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

SignTable SignTable::from_bits(int n, const std::string& str) {
  check_party_count(n);
  if (str.size() != (std::size_t{1} << n))
    throw std::invalid_argument("sign table for n=" + std::to_string(n) + " needs " +
                                std::to_string(std::size_t{1} << n) + " bits, got " +
                                std::to_string(str.size()));
  SignTable t;
  t.n = n;
  t.bits.resize(str.size());
  for (std::size_t i = 0; i < str.size(); ++i) {
    if (str[i] != '0' && str[i] != '1') throw std::invalid_argument("bad sign table bit");
    t.bits[i] = str[i] == '1';
  }
  return t;
}

BellExpression::BellExpression(int n) : n_(n) {
  check_party_count(n);
  coeffs_.assign(std::size_t{1} << n, Dyadic(0));
}

int BellExpression::nonzero_count() const {
  int count = 0;
  for (const auto& c : coeffs_)
    if (!c.is_zero()) ++count;
  return count;
}

int BellExpression::common_shift() const {
  int s = 0;
  for (const auto& c : coeffs_)
    if (c.shift() > s) s = c.shift();
  return s;
}

std::vector<long long> BellExpression::scaled_numerators() const {
  const int s = common_shift();
  std::vector<long long> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    out[k] = coeffs_[k].num() << (s - coeffs_[k].shift());
  return out;
}

BellExpression operator+(const BellExpression& a, const BellExpression& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("expression party counts differ");
  BellExpression out = a;
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] += b.coeffs_[k];
  return out;
}

BellExpression operator-(const BellExpression& a, const BellExpression& b) {
  return a + Dyadic(-1) * b;
}

BellExpression operator*(const Dyadic& s, const BellExpression& e) {
  BellExpression out = e;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

BellExpression wwzb_from_sign_table(const SignTable& table) {
  check_party_count(table.n);
  std::vector<long long> v(table.bits.size());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = table.sign(static_cast<std::uint32_t>(s));
  walsh(v);
  BellExpression e(table.n);
  for (std::size_t k = 0; k < v.size(); ++k)
    e.set_coeff(static_cast<std::uint32_t>(k), Dyadic::scaled(v[k], table.n));
  return e;
}

bool sign_table_from_expression(const BellExpression& e, SignTable& out) {
  const int shift = e.common_shift();
  std::vector<long long> v = e.scaled_numerators();
  walsh(v);
  const long long unit = 1LL << shift;
  SignTable t;
  t.n = e.n();
  t.bits.resize(v.size());
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] == unit)
      t.bits[s] = 0;
    else if (v[s] == -unit)
      t.bits[s] = 1;
    else
      return false;
  }
  out = t;
  return true;
}

BellExpression prime_partner(const BellExpression& e) {
  const std::uint32_t mask = e.key_count() - 1;
  BellExpression out(e.n());
  for (std::uint32_t k = 0; k <= mask; ++k) out.set_coeff(k, e.coeff(~k & mask));
  return out;
}

BellExpression mabk_closed_form(int n) {
  check_party_count(n);
  const GaussianDyadic half_one_minus_i{Dyadic::scaled(1, 1), Dyadic::scaled(-1, 1)};
  const GaussianDyadic z = half_one_minus_i.pow(n - 1);
  BellExpression e(n);
  for (std::uint32_t k = 0; k < e.key_count(); ++k) {
    GaussianDyadic term = z;
    for (int r = 0; r < std::popcount(k); ++r) term = term.times_i();
    e.set_coeff(k, term.re);
  }
  return e;
}

BellExpression mabk(int n) {
  check_party_count(n);
  BellExpression m(1);
  m.set_coeff(0, Dyadic(1));
  const Dyadic half = Dyadic::scaled(1, 1);
  for (int parties = 2; parties <= n; ++parties) {
    BellExpression next(parties);
    const std::uint32_t prev_mask = m.key_count() - 1;
    for (std::uint32_t k = 0; k <= prev_mask; ++k) {
      const Dyadic own = m.coeff(k);
      const Dyadic partner = m.coeff(~k & prev_mask);
      next.set_coeff(k << 1, half * (own + partner));
      next.set_coeff(k << 1 | 1, half * (own - partner));
    }
    m = next;
  }
  if (!(m == mabk_closed_form(n)))
    throw std::logic_error("mabk: recursion and closed form disagree at n=" + std::to_string(n));
  return m;
}

BellExpression svetlichny(int n, int sign) {
  check_party_count(n);
  if (n < 2) throw std::invalid_argument("svetlichny: n >= 2 required");
  if (sign != 1 && sign != -1) throw std::invalid_argument("svetlichny: sign must be +-1");
  const BellExpression m = mabk(n);
  const BellExpression mp = prime_partner(m);
  const auto parity_sign = [](long long e) { return e % 2 == 0 ? 1 : -1; };
  if (n % 2 == 0) {
    const int k = n / 2;
    const Dyadic pref = Dyadic(parity_sign(static_cast<long long>(k) * (k + sign) / 2)) *
                        Dyadic(1LL << (k - 1));
    return pref * (sign == 1 ? m : mp);
  }
  const int k = (n - 1) / 2;
  const int sa = parity_sign(static_cast<long long>(k) * (k + 1) / 2);
  const int sb = parity_sign(static_cast<long long>(k) * (k - 1) / 2);
  if (sign == 1) {
    const Dyadic pref(1LL << (k + 1));
    return pref * (Dyadic(sa) * m - Dyadic(sb) * mp);
  }
  const Dyadic pref = k >= 1 ? Dyadic(1LL << (k - 1)) : Dyadic::scaled(1, 1);
  return pref * (Dyadic(sb) * m + Dyadic(sa) * mp);
}

QuadraticExpression uffink(int n, UffinkBase base, int svet_sign) {
  check_party_count(n);
  if (n < 3) throw std::invalid_argument("uffink: n >= 3 required");
  QuadraticExpression q;
  if (base == UffinkBase::mabk) {
    q.first = mabk(n);
    q.biseparable_bound = Dyadic(1LL << (n - 2));
    q.quantum_bound = Dyadic(1LL << (n - 1));
  } else {
    q.first = svetlichny(n, svet_sign);
    q.biseparable_bound = Dyadic(1LL << (2 * n - 2));
    q.quantum_bound = Dyadic(1LL << (2 * n - 1));
  }
  q.second = prime_partner(q.first);
  return q;
}

}  // namespace bellforge
