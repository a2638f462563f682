#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's kernels or closed forms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "derange/egf_series.hpp"
#include "derange/poly.hpp"
#include "derange/rational.hpp"

namespace oracle {

using derange::Poly;
using derange::Rational;

inline Rational fact(unsigned n) {
  Rational f(1);
  for (unsigned i = 2; i <= n; ++i) f *= Rational(i);
  return f;
}

inline Rational choose(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  Rational c(1);
  for (unsigned i = 0; i < k; ++i) c = c * Rational(n - i) / Rational(i + 1);
  return c;
}

inline Rational power(const Rational& b, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Calls `visit` on every permutation of {0..n-1} in lexicographic order.
inline void for_each_permutation(unsigned n, const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do {
    visit(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

// Cycle label of every element.
inline std::vector<unsigned> cycle_labels(const std::vector<unsigned>& p) {
  std::vector<unsigned> label(p.size(), UINT32_MAX);
  unsigned next = 0;
  for (unsigned i = 0; i < p.size(); ++i) {
    if (label[i] != UINT32_MAX) continue;
    for (unsigned j = i; label[j] == UINT32_MAX; j = p[j]) label[j] = next;
    ++next;
  }
  return label;
}

inline std::uint64_t derangements(unsigned n) {
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const auto& p) {
    for (unsigned i = 0; i < n; ++i) {
      if (p[i] == i) return;
    }
    ++count;
  });
  return count;
}

inline std::uint64_t r_derangements(unsigned n, unsigned r) {
  std::uint64_t count = 0;
  for_each_permutation(n + r, [&](const auto& p) {
    for (unsigned i = 0; i < n + r; ++i) {
      if (p[i] == i) return;
    }
    const auto label = cycle_labels(p);
    for (unsigned i = 0; i < r; ++i) {
      for (unsigned j = i + 1; j < r; ++j) {
        if (label[i] == label[j]) return;
      }
    }
    ++count;
  });
  return count;
}

inline std::uint64_t permutations_with_cycles(unsigned n, unsigned k) {
  std::uint64_t count = 0;
  for_each_permutation(n, [&](const auto& p) {
    const auto label = cycle_labels(p);
    const unsigned cycles = n == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    if (cycles == k) ++count;
  });
  return count;
}

// Set partitions of {0..n-1} into exactly k blocks, by explicit block assignment.
inline std::uint64_t set_partitions(unsigned n, unsigned k) {
  std::uint64_t count = 0;
  std::function<void(unsigned, unsigned)> place = [&](unsigned i, unsigned blocks) {
    if (i == n) {
      if (blocks == k) ++count;
      return;
    }
    for (unsigned b = 0; b < blocks; ++b) place(i + 1, blocks);
    if (blocks < k) place(i + 1, blocks + 1);
  };
  place(0, 0);
  return count;
}

inline std::uint64_t bell(unsigned n) {
  std::uint64_t total = 0;
  for (unsigned k = 0; k <= n; ++k) total += set_partitions(n, k);
  return total;
}

// Ordered set partitions of {0..n-1}: all maps onto {0..k-1}, summed over k.
inline std::uint64_t ordered_set_partitions(unsigned n) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<unsigned> f(n, 0);
    while (true) {
      std::vector<bool> hit(k, false);
      for (unsigned v : f) hit[v] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) ++total;
      unsigned i = 0;
      while (i < n && ++f[i] == k) f[i++] = 0;
      if (i == n) break;
    }
  }
  return total;
}

// Stirling numbers of the second kind by the explicit inclusion-exclusion sum.
inline Rational stirling2(unsigned n, unsigned k) {
  Rational acc;
  for (unsigned j = 0; j <= k; ++j) {
    const Rational term = choose(k, j) * power(Rational(j), n);
    acc += (k - j) % 2 == 0 ? term : -term;
  }
  return acc / fact(k);
}

// Ordinary power series truncated at t^order: entry n is [t^n].
struct Ops {
  std::vector<Rational> c;

  explicit Ops(std::size_t order) : c(order + 1) {}

  static Ops exp(std::size_t order, const Rational& rate) {
    Ops s(order);
    for (std::size_t n = 0; n <= order; ++n) s.c[n] = power(rate, n) / fact(n);
    return s;
  }
  // t^shift / (1 - t)^k
  static Ops inverse_power(std::size_t order, unsigned k, unsigned shift = 0) {
    Ops s(order);
    for (std::size_t n = shift; n <= order; ++n) {
      const unsigned m = n - shift;
      s.c[n] = k == 0 ? Rational(m == 0 ? 1 : 0) : choose(m + k - 1, k - 1);
    }
    return s;
  }
  friend Ops operator*(const Ops& a, const Ops& b) {
    Ops s(std::min(a.c.size(), b.c.size()) - 1);
    for (std::size_t n = 0; n < s.c.size(); ++n) {
      for (std::size_t k = 0; k <= n; ++k) s.c[n] += a.c[k] * b.c[n - k];
    }
    return s;
  }
  // Entry n becomes n! [t^n].
  std::vector<Rational> egf() const {
    std::vector<Rational> out(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) out[n] = c[n] * fact(n);
    return out;
  }
};

// Classical Euler numbers from the defining relation sum_k binom(n,k) E_k + E_n = 2 [n = 0].
inline std::vector<Rational> euler_numbers(unsigned n_max) {
  std::vector<Rational> e(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    Rational acc = n == 0 ? Rational(2) : Rational(0);
    for (unsigned k = 0; k < n; ++k) acc -= choose(n, k) * e[k];
    e[n] = acc / Rational(2);
  }
  return e;
}

// Hand-rolled generators for the property tests.
struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Rational rational() {
    const long num = integer(-9, 9);
    const long den = integer(1, 7);
    return Rational(num, den);
  }

  Rational nonzero_rational() {
    Rational q;
    while (q.is_zero()) q = rational();
    return q;
  }

  derange::RationalSeries series(std::size_t order) {
    std::vector<Rational> c(order + 1);
    for (auto& v : c) v = rational();
    return derange::RationalSeries::from_sequence(std::move(c));
  }

  Poly poly(unsigned max_degree) {
    std::vector<Rational> c(static_cast<std::size_t>(integer(0, max_degree + 1)));
    for (auto& v : c) v = rational();
    return Poly(std::move(c));
  }

  derange::PolySeries poly_series(std::size_t order, unsigned max_degree) {
    std::vector<Poly> c(order + 1);
    for (auto& v : c) v = poly(max_degree);
    return derange::PolySeries::from_sequence(std::move(c));
  }
};

}  // namespace oracle
