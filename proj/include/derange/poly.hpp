#pragma once

#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "derange/rational.hpp"

namespace derange {

/// Univariate polynomial in x over Rational. Coefficients are stored
/// lowest degree first with trailing zeros stripped; the zero polynomial is
/// the empty sequence.
class Poly {
 public:
  static constexpr long kZeroDegree = std::numeric_limits<long>::min();

  Poly() = default;
  Poly(const Rational& constant);  // NOLINT(implicit)
  template <std::integral I>
  Poly(I constant) : Poly(Rational(constant)) {}  // NOLINT(implicit)
  explicit Poly(std::vector<Rational> coeffs);

  /// The indeterminate x.
  static Poly x();
  static Poly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// kZeroDegree for the zero polynomial.
  long degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1; }
  std::span<const Rational> coeffs() const { return coeffs_; }
  /// Coefficient of x^i; zero past the degree.
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  /// Horner evaluation.
  Rational operator()(const Rational& at) const;
  /// p(q(x)).
  Poly compose(const Poly& inner) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly operator-() const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Coefficient list, e.g. `[1, -2, 2]` for 2x^2 - 2x + 1.
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

}  // namespace derange
