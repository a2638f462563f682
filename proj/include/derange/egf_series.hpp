#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "derange/errors.hpp"
#include "derange/poly.hpp"
#include "derange/rational.hpp"

namespace derange {

// Coefficient rings a series may be instantiated over.
template <class C>
concept SeriesCoefficient = requires(const C& a, const C& b, const Rational& s) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { a * s } -> std::convertible_to<C>;
  { a == b } -> std::convertible_to<bool>;
  C(s);
};

namespace detail {

inline std::optional<Rational> constant_inverse(const Rational& c) {
  if (c.is_zero()) return std::nullopt;
  return Rational(1) / c;
}

inline std::optional<Rational> constant_inverse(const Poly& c) {
  if (c.degree() != 0) return std::nullopt;
  return Rational(1) / c.coeff(0);
}

inline bool is_zero(const Rational& c) { return c.is_zero(); }
inline bool is_zero(const Poly& c) { return c.is_zero(); }

// Rows 0..n of Pascal's triangle.
inline std::vector<std::vector<Rational>> pascal(std::size_t n) {
  std::vector<std::vector<Rational>> rows(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    rows[i].resize(i + 1, Rational(1));
    for (std::size_t j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

}  // namespace detail

/// Exponential generating function truncated at t^order. Entry n holds
/// a_n = n! [t^n] f(t), so products are binomial convolutions.
template <SeriesCoefficient C>
class EgfSeries {
 public:
  explicit EgfSeries(std::size_t order) : coeffs_(order + 1) {}

  /// The sequence length fixes the order (length - 1). Throws on empty input.
  static EgfSeries from_sequence(std::vector<C> coeffs) {
    if (coeffs.empty()) throw InvalidParameter("series needs at least one coefficient");
    EgfSeries s(0);
    s.coeffs_ = std::move(coeffs);
    return s;
  }

  static EgfSeries constant(std::size_t order, const C& value) {
    EgfSeries s(order);
    s.coeffs_[0] = value;
    return s;
  }

  /// e^{c t}: a_n = c^n.
  static EgfSeries exponential(std::size_t order, const C& rate) {
    EgfSeries s(order);
    s.coeffs_[0] = C(Rational(1));
    for (std::size_t n = 1; n <= order; ++n) s.coeffs_[n] = s.coeffs_[n - 1] * rate;
    return s;
  }

  /// 1/(1 - c t): a_n = n! c^n.
  static EgfSeries geometric(std::size_t order, const C& ratio) {
    EgfSeries s(order);
    s.coeffs_[0] = C(Rational(1));
    for (std::size_t n = 1; n <= order; ++n) s.coeffs_[n] = s.coeffs_[n - 1] * ratio * Rational(n);
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const C& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<C>& to_sequence() const { return coeffs_; }

  EgfSeries truncated(std::size_t order) const {
    EgfSeries s(std::min(order, this->order()));
    std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
    return s;
  }

  friend EgfSeries operator+(const EgfSeries& a, const EgfSeries& b) {
    EgfSeries s(std::min(a.order(), b.order()));
    for (std::size_t n = 0; n < s.coeffs_.size(); ++n) s.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
    return s;
  }

  friend EgfSeries operator-(const EgfSeries& a, const EgfSeries& b) {
    EgfSeries s(std::min(a.order(), b.order()));
    for (std::size_t n = 0; n < s.coeffs_.size(); ++n) s.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
    return s;
  }

  /// Coefficientwise product with a ring element.
  friend EgfSeries operator*(const EgfSeries& a, const C& c) {
    EgfSeries s(a.order());
    for (std::size_t n = 0; n < s.coeffs_.size(); ++n) s.coeffs_[n] = a.coeffs_[n] * c;
    return s;
  }

  friend bool operator==(const EgfSeries&, const EgfSeries&) = default;

 private:
  std::vector<C> coeffs_;
};

using RationalSeries = EgfSeries<Rational>;
using PolySeries = EgfSeries<Poly>;

/// EGF product: c_n = sum_k binom(n,k) a_k b_{n-k}, at the smaller order.
template <SeriesCoefficient C>
EgfSeries<C> series_mul(const EgfSeries<C>& a, const EgfSeries<C>& b) {
  const std::size_t order = std::min(a.order(), b.order());
  const auto binom = detail::pascal(order);
  std::vector<C> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    C acc{};
    for (std::size_t k = 0; k <= n; ++k) {
      if (detail::is_zero(a[k]) || detail::is_zero(b[n - k])) continue;
      acc = acc + a[k] * b[n - k] * binom[n][k];
    }
    out[n] = std::move(acc);
  }
  return EgfSeries<C>::from_sequence(std::move(out));
}

/// Multiplicative inverse by the direct recurrence
/// c_0 = 1/a_0, c_n = -(1/a_0) sum_{k=1}^n binom(n,k) a_k c_{n-k}.
/// Throws ZeroConstantTerm unless a_0 is an invertible constant.
template <SeriesCoefficient C>
EgfSeries<C> series_recip(const EgfSeries<C>& a) {
  const auto inv = detail::constant_inverse(a[0]);
  if (!inv) throw ZeroConstantTerm();
  const std::size_t order = a.order();
  const auto binom = detail::pascal(order);
  std::vector<C> out(order + 1);
  out[0] = C(*inv);
  for (std::size_t n = 1; n <= order; ++n) {
    C acc{};
    for (std::size_t k = 1; k <= n; ++k) {
      if (detail::is_zero(a[k])) continue;
      acc = acc + a[k] * out[n - k] * binom[n][k];
    }
    out[n] = acc * (-*inv);
  }
  return EgfSeries<C>::from_sequence(std::move(out));
}

/// exp(a) for a_0 = 0 via b_0 = 1, b_n = sum_{k=1}^n binom(n-1,k-1) a_k b_{n-k}.
/// Throws NonzeroConstantTerm otherwise.
template <SeriesCoefficient C>
EgfSeries<C> series_exp(const EgfSeries<C>& a) {
  if (!detail::is_zero(a[0])) throw NonzeroConstantTerm();
  const std::size_t order = a.order();
  const auto binom = detail::pascal(order);
  std::vector<C> out(order + 1);
  out[0] = C(Rational(1));
  for (std::size_t n = 1; n <= order; ++n) {
    C acc{};
    for (std::size_t k = 1; k <= n; ++k) {
      if (detail::is_zero(a[k])) continue;
      acc = acc + a[k] * out[n - k] * binom[n - 1][k - 1];
    }
    out[n] = std::move(acc);
  }
  return EgfSeries<C>::from_sequence(std::move(out));
}

/// Multiplies by t^r: c_n = a_{n-r} n!/(n-r)! for n >= r, else 0. The order is kept.
template <SeriesCoefficient C>
EgfSeries<C> series_scale_pow(unsigned r, const EgfSeries<C>& a) {
  if (r > a.order()) throw InvalidParameter("series_scale_pow: r exceeds the series order");
  std::vector<C> out(a.order() + 1);
  for (std::size_t n = r; n <= a.order(); ++n) {
    Rational falling(1);
    for (std::size_t j = n - r + 1; j <= n; ++j) falling *= Rational(j);
    out[n] = a[n - r] * falling;
  }
  return EgfSeries<C>::from_sequence(std::move(out));
}

/// a^k by repeated multiplication; a^0 is the constant 1.
template <SeriesCoefficient C>
EgfSeries<C> series_pow(const EgfSeries<C>& a, unsigned k) {
  auto result = EgfSeries<C>::constant(a.order(), C(Rational(1)));
  for (unsigned i = 0; i < k; ++i) result = series_mul(result, a);
  return result;
}

/// Lifts a Rational series into the Poly coefficient ring.
inline PolySeries to_poly_series(const RationalSeries& a) {
  std::vector<Poly> out;
  out.reserve(a.order() + 1);
  for (const auto& c : a.to_sequence()) out.emplace_back(c);
  return PolySeries::from_sequence(std::move(out));
}

}  // namespace derange
