#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace derange {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Backed by GMP's mpq_class.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)

  template <std::unsigned_integral I>
  Rational(I value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT(implicit)

  Rational(long numerator, long denominator);

  explicit Rational(mpq_class value);

  /// Parses `a` or `a/b` with an optional leading `-`. Throws ParseError.
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }

  double to_double() const { return value_.get_d(); }
  const mpq_class& raw() const { return value_; }

  /// Canonical text: `a` when the denominator is 1, else `a/b`.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  mpq_class value_;
};

Rational abs(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);
Rational factorial(unsigned n);
/// Binomial coefficient for 0 <= k; zero when k > n.
Rational binomial(unsigned n, unsigned k);
/// Binomial coefficient extended to integer arguments: falling-factorial form
/// for k >= 0, and for k < 0 the value is 0 except binom(-1, -1) = 1.
Rational generalized_binomial(long m, long k);
/// (-1)^n as a Rational.
inline Rational sign_power(unsigned n) { return n % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace derange
