#pragma once

#include "derange/egf_series.hpp"
#include "derange/moments.hpp"
#include "derange/poly.hpp"
#include "derange/rational.hpp"

namespace derange::prob {

/// A random variable Y together with its moment generating series up to a
/// fixed order. Immutable after construction.
class ProbabilisticContext {
 public:
  /// Series are built to min(n_max, last available moment).
  ProbabilisticContext(moments::MomentProvider y, unsigned n_max);

  const moments::MomentProvider& y() const { return y_; }
  unsigned n_max() const { return n_max_; }
  /// Highest index for which every moment up to it is known.
  unsigned available() const { return available_; }

  /// E[e^{tY}]: entry n is E[Y^n].
  const RationalSeries& mgf_series() const { return mgf_; }
  /// E[e^{-tY}]: entry n is (-1)^n E[Y^n].
  const RationalSeries& neg_mgf_series() const { return neg_mgf_; }

  /// Throws InvalidParameter past n_max and MomentOutOfRange past available().
  void require(unsigned n) const;

 private:
  moments::MomentProvider y_;
  unsigned n_max_;
  unsigned available_;
  RationalSeries mgf_;
  RationalSeries neg_mgf_;
};

// Probabilistic Stirling numbers of the second kind and Bell polynomials.

/// {n k}_Y = (1/k!) sum_j binom(k,j) (-1)^{k-j} E[S_j^n].
Rational prob_stirling2(const ProbabilisticContext& ctx, unsigned n, unsigned k);
/// (E[e^{tY}] - 1)^k / k!.
RationalSeries prob_stirling2_egf(const ProbabilisticContext& ctx, unsigned k);

/// phi_n^Y(x) = sum_k {n k}_Y x^k.
Poly prob_bell(const ProbabilisticContext& ctx, unsigned n);
/// exp(x (E[e^{tY}] - 1)).
PolySeries prob_bell_egf(const ProbabilisticContext& ctx);

/// E_n^Y, coefficient of 2 / (E[e^{tY}] + 1).
Rational prob_euler(const ProbabilisticContext& ctx, unsigned n);
RationalSeries prob_euler_egf(const ProbabilisticContext& ctx);

// Probabilistic derangement polynomials D_n^Y(x).

/// n! sum_{m<=n} E[(x - Y)^m] / m!.
Poly prob_derangement_poly(const ProbabilisticContext& ctx, unsigned n);
/// sum_l binom(n,l) D_l^Y x^{n-l}.
Poly prob_derangement_poly_convolution(const ProbabilisticContext& ctx, unsigned n);
/// e^{xt} E[e^{-tY}] / (1 - t).
PolySeries prob_derangement_poly_egf(const ProbabilisticContext& ctx);

/// D_n^Y = D_n^Y(0) = n! sum_{m<=n} (-1)^m E[Y^m] / m!.
Rational prob_derangement_number(const ProbabilisticContext& ctx, unsigned n);
/// E[e^{-tY}] / (1 - t).
RationalSeries prob_derangement_egf(const ProbabilisticContext& ctx);

// Probabilistic r-derangement numbers D_n^{(r,Y)}, n >= r.

/// n! sum_{k=r}^n binom(k,r) (-1)^{n-k} E[Y^{n-k}] / (n-k)!. Throws IndexBelowR.
Rational prob_r_derangement(const ProbabilisticContext& ctx, unsigned n, unsigned r);
/// n! sum_{l=r}^n binom(l-1, r-1) D_{n-l}^Y / (n-l)!, with binom(-1,-1) = 1.
Rational prob_r_derangement_via_derangements(const ProbabilisticContext& ctx, unsigned n, unsigned r);
/// D_{n+r}^{(r,Y)} = (n+r)! sum_{l<=n} binom(r+l-1, l) D_{n-l}^Y / (n-l)!.
Rational prob_r_derangement_shifted(const ProbabilisticContext& ctx, unsigned n, unsigned r);
/// t^r (1 - t)^{-(r+1)} E[e^{-tY}].
RationalSeries prob_r_derangement_egf(const ProbabilisticContext& ctx, unsigned r);

/// E[Y^n] recovered as n! sum_k D_{k+r}^{(r,Y)} / (k+r)! (-1)^k binom(r+1, n-k).
Rational moment_from_r_derangements(const ProbabilisticContext& ctx, unsigned n, unsigned r);

// Probabilistic type-2 derangement polynomials d_n^Y(x).

/// n! sum_k (-1)^k E[Y^k] x^{n-k} / k!.
Poly prob_type2_poly(const ProbabilisticContext& ctx, unsigned n);
/// d_0 = 1, d_n = n x d_{n-1} + (-1)^n E[Y^n].
Poly prob_type2_poly_recurrence(const ProbabilisticContext& ctx, unsigned n);
/// sum_j sum_l [j l] binom(n,j) x^j (-1)^{n-j} E[Y^{n-j}].
Poly prob_type2_poly_cycles(const ProbabilisticContext& ctx, unsigned n);
/// E[e^{-tY}] / (1 - x t).
PolySeries prob_type2_poly_egf(const ProbabilisticContext& ctx);

}  // namespace derange::prob
