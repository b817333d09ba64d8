#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "rgather/error.hpp"

namespace rgather {

/// Exact rational with int64 numerator/denominator, always normalized
/// (den > 0, gcd(num, den) == 1). Intermediate products run through
/// __int128 and are checked before narrowing, so thresholds and grid
/// units derived from integer edge lengths never silently lose bits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(Errc::InvalidParams, "division by zero rational");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// floor(a / this) for integer a >= 0; requires *this > 0.
  long long floor_div(long long a) const {
    if (num_ <= 0) fail(Errc::NonPositiveUnit, "floor_div needs a positive unit");
    if (a < 0) fail(Errc::InvalidParams, "floor_div needs a non-negative value");
    return narrow(i128(a) * den_ / num_);
  }

  /// Exact floor of the rational itself.
  long long floor() const {
    i128 q = i128(num_) / den_;
    if (num_ < 0 && i128(num_) % den_ != 0) q -= 1;
    return narrow(q);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p" or "p/q". Throws ParseError on malformed input.
  static Rational parse(const std::string& text);

 private:
  using i128 = __int128;

  static long long narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) fail(Errc::Overflow, "rational overflow");
    return static_cast<long long>(v);
  }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) fail(Errc::InvalidParams, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 an = n < 0 ? -n : n;
    i128 g = gcd128(an, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  void normalize() {
    Rational r = from_i128(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  long long num_;
  long long den_;
};

inline Rational Rational::parse(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> long long {
    if (s.empty()) fail(Errc::ParseError, "empty rational component in '" + text + "'");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad rational '" + text + "'");
    }
    if (pos != s.size()) fail(Errc::ParseError, "bad rational '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  long long p = parse_int(text.substr(0, slash));
  long long q = parse_int(text.substr(slash + 1));
  if (q == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
  return Rational(p, q);
}

}  // namespace rgather
