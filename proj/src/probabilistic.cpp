#include "derange/probabilistic.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "derange/classical.hpp"
#include "derange/errors.hpp"

namespace derange::prob {

namespace {

unsigned available_order(const moments::MomentProvider& y, unsigned n_max) {
  const auto cap = y.max_moment();
  return cap ? std::min(*cap, n_max) : n_max;
}

RationalSeries moment_series(const moments::MomentProvider& y, unsigned order, bool negate) {
  std::vector<Rational> coeffs(order + 1);
  for (unsigned n = 0; n <= order; ++n) {
    coeffs[n] = y.moment(n);
    if (negate && n % 2 == 1) coeffs[n] = -coeffs[n];
  }
  return RationalSeries::from_sequence(std::move(coeffs));
}

}  // namespace

ProbabilisticContext::ProbabilisticContext(moments::MomentProvider y, unsigned n_max)
    : y_(std::move(y)),
      n_max_(n_max),
      available_(available_order(y_, n_max)),
      mgf_(moment_series(y_, available_, false)),
      neg_mgf_(moment_series(y_, available_, true)) {}

void ProbabilisticContext::require(unsigned n) const {
  if (n > n_max_) {
    throw InvalidParameter("index " + std::to_string(n) + " exceeds context order " + std::to_string(n_max_));
  }
  if (n > available_) throw MomentOutOfRange(available_ + 1);
}

Rational prob_stirling2(const ProbabilisticContext& ctx, unsigned n, unsigned k) {
  ctx.require(n);
  Rational acc;
  for (unsigned j = 0; j <= k; ++j) {
    acc += binomial(k, j) * sign_power(k - j) * ctx.y().sum_moment(j, n);
  }
  return acc / factorial(k);
}

RationalSeries prob_stirling2_egf(const ProbabilisticContext& ctx, unsigned k) {
  const auto& mgf = ctx.mgf_series();
  const auto shifted = mgf - RationalSeries::constant(mgf.order(), Rational(1));
  return series_pow(shifted, k) * (Rational(1) / factorial(k));
}

Poly prob_bell(const ProbabilisticContext& ctx, unsigned n) {
  std::vector<Rational> coeffs(n + 1);
  for (unsigned k = 0; k <= n; ++k) coeffs[k] = prob_stirling2(ctx, n, k);
  return Poly(std::move(coeffs));
}

PolySeries prob_bell_egf(const ProbabilisticContext& ctx) {
  const auto& mgf = ctx.mgf_series();
  const auto shifted = to_poly_series(mgf - RationalSeries::constant(mgf.order(), Rational(1)));
  return series_exp(shifted * Poly::x());
}

RationalSeries prob_euler_egf(const ProbabilisticContext& ctx) {
  const auto& mgf = ctx.mgf_series();
  return series_recip(mgf + RationalSeries::constant(mgf.order(), Rational(1))) * Rational(2);
}

Rational prob_euler(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  const auto mgf = ctx.mgf_series().truncated(n);
  return (series_recip(mgf + RationalSeries::constant(n, Rational(1))) * Rational(2))[n];
}

Poly prob_derangement_poly(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  Poly acc;
  for (unsigned m = 0; m <= n; ++m) {
    acc += moments::shifted_power_moment_poly(ctx.y(), m) * (Rational(1) / factorial(m));
  }
  return acc * factorial(n);
}

Poly prob_derangement_poly_convolution(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  std::vector<Rational> coeffs(n + 1);
  for (unsigned l = 0; l <= n; ++l) coeffs[n - l] = binomial(n, l) * prob_derangement_number(ctx, l);
  return Poly(std::move(coeffs));
}

PolySeries prob_derangement_poly_egf(const ProbabilisticContext& ctx) {
  const std::size_t order = ctx.available();
  return series_mul(PolySeries::exponential(order, Poly::x()), to_poly_series(prob_derangement_egf(ctx)));
}

Rational prob_derangement_number(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  Rational acc;
  for (unsigned m = 0; m <= n; ++m) acc += sign_power(m) * ctx.y().moment(m) / factorial(m);
  return factorial(n) * acc;
}

RationalSeries prob_derangement_egf(const ProbabilisticContext& ctx) {
  const auto& neg = ctx.neg_mgf_series();
  return series_mul(RationalSeries::geometric(neg.order(), Rational(1)), neg);
}

Rational prob_r_derangement(const ProbabilisticContext& ctx, unsigned n, unsigned r) {
  if (n < r) throw IndexBelowR(n, r);
  ctx.require(n);
  Rational acc;
  for (unsigned k = r; k <= n; ++k) {
    acc += binomial(k, r) * sign_power(n - k) * ctx.y().moment(n - k) / factorial(n - k);
  }
  return factorial(n) * acc;
}

Rational prob_r_derangement_via_derangements(const ProbabilisticContext& ctx, unsigned n, unsigned r) {
  if (n < r) throw IndexBelowR(n, r);
  ctx.require(n);
  Rational acc;
  for (unsigned l = r; l <= n; ++l) {
    acc += generalized_binomial(static_cast<long>(l) - 1, static_cast<long>(r) - 1) *
           prob_derangement_number(ctx, n - l) / factorial(n - l);
  }
  return factorial(n) * acc;
}

Rational prob_r_derangement_shifted(const ProbabilisticContext& ctx, unsigned n, unsigned r) {
  ctx.require(n + r);
  Rational acc;
  for (unsigned l = 0; l <= n; ++l) {
    acc += generalized_binomial(static_cast<long>(r + l) - 1, l) * prob_derangement_number(ctx, n - l) /
           factorial(n - l);
  }
  return factorial(n + r) * acc;
}

RationalSeries prob_r_derangement_egf(const ProbabilisticContext& ctx, unsigned r) {
  const auto& neg = ctx.neg_mgf_series();
  const auto geo = RationalSeries::geometric(neg.order(), Rational(1));
  return series_scale_pow(r, series_mul(series_pow(geo, r + 1), neg));
}

Rational moment_from_r_derangements(const ProbabilisticContext& ctx, unsigned n, unsigned r) {
  ctx.require(n + r);
  Rational acc;
  for (unsigned k = 0; k <= n; ++k) {
    acc += prob_r_derangement(ctx, k + r, r) / factorial(k + r) * sign_power(k) *
           generalized_binomial(static_cast<long>(r) + 1, static_cast<long>(n - k));
  }
  return factorial(n) * acc;
}

Poly prob_type2_poly(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  std::vector<Rational> coeffs(n + 1);
  const Rational nf = factorial(n);
  for (unsigned k = 0; k <= n; ++k) coeffs[n - k] = nf * sign_power(k) * ctx.y().moment(k) / factorial(k);
  return Poly(std::move(coeffs));
}

Poly prob_type2_poly_recurrence(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  Poly d(1);
  for (unsigned m = 1; m <= n; ++m) {
    d = Poly::x() * d * Rational(m) + Poly(sign_power(m) * ctx.y().moment(m));
  }
  return d;
}

Poly prob_type2_poly_cycles(const ProbabilisticContext& ctx, unsigned n) {
  ctx.require(n);
  const classical::StirlingTables tables(n);
  std::vector<Rational> coeffs(n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    Rational cycles;
    for (unsigned l = 0; l <= j; ++l) cycles += tables.u1(j, l);
    coeffs[j] = cycles * binomial(n, j) * sign_power(n - j) * ctx.y().moment(n - j);
  }
  return Poly(std::move(coeffs));
}

PolySeries prob_type2_poly_egf(const ProbabilisticContext& ctx) {
  const auto& neg = ctx.neg_mgf_series();
  return series_mul(PolySeries::geometric(neg.order(), Poly::x()), to_poly_series(neg));
}

}  // namespace derange::prob
