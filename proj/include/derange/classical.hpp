#pragma once

#include <cstdint>
#include <vector>

#include "derange/egf_series.hpp"
#include "derange/poly.hpp"
#include "derange/rational.hpp"

namespace derange::classical {

/// Stirling numbers for 0 <= k <= n <= n_max, built from the triangular
/// recurrences. Lookups outside the triangle return 0.
class StirlingTables {
 public:
  explicit StirlingTables(unsigned n_max);

  unsigned n_max() const { return n_max_; }
  /// Second kind {n k}.
  const Rational& s2(unsigned n, unsigned k) const;
  /// Signed first kind S_1(n, k).
  Rational s1(unsigned n, unsigned k) const;
  /// Unsigned first kind [n k] = (-1)^{n-k} S_1(n, k).
  const Rational& u1(unsigned n, unsigned k) const;

 private:
  unsigned n_max_;
  std::vector<std::vector<Rational>> s2_;
  std::vector<std::vector<Rational>> u1_;
};

inline StirlingTables stirling_tables(unsigned n_max) { return StirlingTables(n_max); }

/// D_n = n! sum_{k=0}^n (-1)^k / k!.
Rational derangement(unsigned n);

/// D_n^{(r)} for n >= r; throws IndexBelowR when n < r.
Rational r_derangement(unsigned n, unsigned r);

/// D_n(x) = sum_l binom(n,l) D_l x^{n-l}.
Poly derangement_poly(unsigned n);

/// Type-2 polynomial d_n(x) = n! sum_k (-1)^k x^{n-k} / k!.
Poly type2_poly(unsigned n);

/// F_n(x) = sum_k {n k} k! x^k.
Poly fubini_poly(unsigned n);

/// Ordinary Euler numbers, coefficients of 2/(e^t + 1).
Rational euler_number(unsigned n);

/// Generating-function expansions of the same families, each truncated at `order`.
namespace egf {

/// e^{-t} / (1 - t).
RationalSeries derangements(std::size_t order);
/// t^r (1 - t)^{-(r+1)} e^{-t}.
RationalSeries r_derangements(std::size_t order, unsigned r);
/// e^{xt} e^{-t} / (1 - t).
PolySeries derangement_polys(std::size_t order);
/// e^{-t} / (1 - x t).
PolySeries type2_polys(std::size_t order);
/// 1 / (1 - x (e^t - 1)).
PolySeries fubini_polys(std::size_t order);
/// (e^t - 1)^k / k!; entry n is {n k}.
RationalSeries stirling2_column(std::size_t order, unsigned k);
/// (log(1 + t))^k / k!; entry n is S_1(n, k).
RationalSeries stirling1_column(std::size_t order, unsigned k);
/// 2 / (e^t + 1).
RationalSeries euler_numbers(std::size_t order);

}  // namespace egf

/// Brute-force counts over explicit enumeration. Each throws SizeLimit
/// beyond its documented bound.
namespace enumerate {

/// Fixed-point-free permutations of {1..n}; n <= 9.
std::uint64_t derangements(unsigned n);
/// Derangements of {1..n+r} with 1..r in pairwise distinct cycles; n + r <= 9.
std::uint64_t r_derangements(unsigned n, unsigned r);
/// Set partitions of {1..n} into exactly k blocks; n <= 12.
std::uint64_t set_partitions(unsigned n, unsigned k);
/// Ordered set partitions (surjections onto {1..k}, summed over k); n <= 8.
std::uint64_t ordered_set_partitions(unsigned n);
/// Permutations of {1..n} with exactly k cycles; n <= 9.
std::uint64_t permutations_with_cycles(unsigned n, unsigned k);

}  // namespace enumerate

inline std::uint64_t count_derangements_bruteforce(unsigned n) { return enumerate::derangements(n); }
inline std::uint64_t count_r_derangements_bruteforce(unsigned n, unsigned r) {
  return enumerate::r_derangements(n, r);
}

}  // namespace derange::classical
