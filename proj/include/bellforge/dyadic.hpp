#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bellforge {

// Exact rational with a power-of-two denominator: num / 2^shift.
// Normal form: num odd, or shift == 0.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(long long integer) : num_(integer), shift_(0) {}

  static Dyadic scaled(long long num, int shift) {
    if (shift < 0 || shift > 62) throw std::invalid_argument("Dyadic: shift out of range");
    Dyadic d;
    d.num_ = num;
    d.shift_ = shift;
    d.normalize();
    return d;
  }

  static Dyadic parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Dyadic(std::stoll(text));
    const long long num = std::stoll(text.substr(0, slash));
    const long long den = std::stoll(text.substr(slash + 1));
    if (den <= 0 || (den & (den - 1)) != 0)
      throw std::invalid_argument("Dyadic: denominator must be a positive power of two");
    int shift = 0;
    while ((1LL << shift) != den) ++shift;
    return scaled(num, shift);
  }

  long long num() const { return num_; }
  int shift() const { return shift_; }
  long long den() const { return 1LL << shift_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return std::ldexp(static_cast<double>(num_), -shift_); }
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den()); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const int s = a.shift_ > b.shift_ ? a.shift_ : b.shift_;
    return scaled(checked((__int128)a.num_ << (s - a.shift_)) +
                      checked((__int128)b.num_ << (s - b.shift_)),
                  s);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  Dyadic operator-() const {
    Dyadic d = *this;
    d.num_ = -d.num_;
    return d;
  }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.shift_ + b.shift_ > 62) throw std::overflow_error("Dyadic: shift overflow");
    return scaled(checked((__int128)a.num_ * b.num_), a.shift_ + b.shift_);
  }
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.shift_ == b.shift_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    const int s = a.shift_ > b.shift_ ? a.shift_ : b.shift_;
    return ((__int128)a.num_ << (s - a.shift_)) < ((__int128)b.num_ << (s - b.shift_));
  }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

  Dyadic abs() const { return num_ < 0 ? -*this : *this; }

 private:
  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Dyadic: numerator overflow");
    return static_cast<long long>(v);
  }
  void normalize() {
    while (shift_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --shift_;
    }
    if (num_ == 0) shift_ = 0;
  }

  long long num_ = 0;
  int shift_ = 0;
};

// Gaussian dyadic: re + i*im with dyadic parts. Enough arithmetic for the
// closed-form coefficient expansion.
struct GaussianDyadic {
  Dyadic re, im;

  friend GaussianDyadic operator+(const GaussianDyadic& a, const GaussianDyadic& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianDyadic operator*(const GaussianDyadic& a, const GaussianDyadic& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianDyadic times_i() const { return {-im, re}; }
  GaussianDyadic conj() const { return {re, -im}; }
  GaussianDyadic pow(int e) const {
    GaussianDyadic r{Dyadic(1), Dyadic(0)};
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
};

// Exact constant 2^(half_exponent/2), half_exponent >= 0. Covers every closed-form
// bound constant the builder stores (integer powers of two and their sqrt(2) multiples).
struct Sqrt2Power {
  int half_exponent = 0;

  double to_double() const {
    return half_exponent % 2 == 0
               ? std::ldexp(1.0, half_exponent / 2)
               : std::ldexp(std::sqrt(2.0), (half_exponent - 1) / 2);
  }
  std::string to_string() const {
    if (half_exponent < 0) throw std::invalid_argument("Sqrt2Power: negative exponent");
    if (half_exponent % 2 == 0) return Dyadic(1LL << (half_exponent / 2)).to_string();
    const long long coef = 1LL << ((half_exponent - 1) / 2);
    return coef == 1 ? std::string("sqrt(2)") : std::to_string(coef) + "*sqrt(2)";
  }
};

}  // namespace bellforge
