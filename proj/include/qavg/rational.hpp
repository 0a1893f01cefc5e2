#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "qavg/errors.hpp"

namespace qavg {

/// Exact rational with normalized 64-bit numerator/denominator. The region
/// geometry only involves tiny values; intermediates go through __int128 so
/// products and comparisons stay exact.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double value() const { return double(num_) / double(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw RangeError("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "a" or "a/b".
  static Rational parse(const std::string& text);

 private:
  using i128 = __int128;

  static Rational from128(i128 num, i128 den) {
    if (den == 0) throw RangeError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw RangeError("rational overflow");
    Rational r;
    r.num_ = std::int64_t(num);
    r.den_ = std::int64_t(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = from128(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse rational '" + text + "'");
  }
}

}  // namespace qavg
