#include "derange/classical.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "derange/errors.hpp"

namespace derange::classical {

StirlingTables::StirlingTables(unsigned n_max) : n_max_(n_max), s2_(n_max + 1), u1_(n_max + 1) {
  for (unsigned n = 0; n <= n_max; ++n) {
    s2_[n].resize(n + 1);
    u1_[n].resize(n + 1);
  }
  s2_[0][0] = Rational(1);
  u1_[0][0] = Rational(1);
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const Rational keep_s2 = k < n ? s2_[n - 1][k] : Rational(0);
      const Rational keep_u1 = k < n ? u1_[n - 1][k] : Rational(0);
      s2_[n][k] = Rational(k) * keep_s2 + s2_[n - 1][k - 1];
      u1_[n][k] = Rational(n - 1) * keep_u1 + u1_[n - 1][k - 1];
    }
  }
}

namespace {
const Rational kZero{};
}

const Rational& StirlingTables::s2(unsigned n, unsigned k) const {
  if (n > n_max_ || k > n) return kZero;
  return s2_[n][k];
}

const Rational& StirlingTables::u1(unsigned n, unsigned k) const {
  if (n > n_max_ || k > n) return kZero;
  return u1_[n][k];
}

Rational StirlingTables::s1(unsigned n, unsigned k) const { return sign_power(n - k) * u1(n, k); }

Rational derangement(unsigned n) {
  Rational acc;
  for (unsigned k = 0; k <= n; ++k) acc += sign_power(k) / factorial(k);
  return factorial(n) * acc;
}

Rational r_derangement(unsigned n, unsigned r) {
  if (n < r) throw IndexBelowR(n, r);
  // n! sum_{k=r}^n binom(k,r) (-1)^{n-k} / (n-k)!
  Rational acc;
  for (unsigned k = r; k <= n; ++k) acc += binomial(k, r) * sign_power(n - k) / factorial(n - k);
  return factorial(n) * acc;
}

Poly derangement_poly(unsigned n) {
  std::vector<Rational> coeffs(n + 1);
  for (unsigned l = 0; l <= n; ++l) coeffs[n - l] = binomial(n, l) * derangement(l);
  return Poly(std::move(coeffs));
}

Poly type2_poly(unsigned n) {
  std::vector<Rational> coeffs(n + 1);
  const Rational nf = factorial(n);
  for (unsigned k = 0; k <= n; ++k) coeffs[n - k] = nf * sign_power(k) / factorial(k);
  return Poly(std::move(coeffs));
}

Poly fubini_poly(unsigned n) {
  const StirlingTables tables(n);
  std::vector<Rational> coeffs(n + 1);
  for (unsigned k = 0; k <= n; ++k) coeffs[k] = tables.s2(n, k) * factorial(k);
  return Poly(std::move(coeffs));
}

Rational euler_number(unsigned n) { return egf::euler_numbers(n)[n]; }

namespace egf {

RationalSeries derangements(std::size_t order) {
  return series_mul(RationalSeries::geometric(order, Rational(1)), RationalSeries::exponential(order, Rational(-1)));
}

RationalSeries r_derangements(std::size_t order, unsigned r) {
  const auto geo = RationalSeries::geometric(order, Rational(1));
  auto s = series_mul(series_pow(geo, r + 1), RationalSeries::exponential(order, Rational(-1)));
  return series_scale_pow(r, s);
}

PolySeries derangement_polys(std::size_t order) {
  const auto exp_xt = PolySeries::exponential(order, Poly::x());
  const auto rest = to_poly_series(derangements(order));
  return series_mul(exp_xt, rest);
}

PolySeries type2_polys(std::size_t order) {
  return series_mul(PolySeries::geometric(order, Poly::x()), PolySeries::exponential(order, Poly(-1)));
}

PolySeries fubini_polys(std::size_t order) {
  // 1 - x (e^t - 1)
  const auto et_minus_one = PolySeries::exponential(order, Poly(1)) - PolySeries::constant(order, Poly(1));
  const auto denom = PolySeries::constant(order, Poly(1)) - et_minus_one * Poly::x();
  return series_recip(denom);
}

RationalSeries stirling2_column(std::size_t order, unsigned k) {
  const auto base = RationalSeries::exponential(order, Rational(1)) - RationalSeries::constant(order, Rational(1));
  return series_pow(base, k) * (Rational(1) / factorial(k));
}

RationalSeries stirling1_column(std::size_t order, unsigned k) {
  // log(1 + t): a_n = (-1)^{n-1} (n-1)! for n >= 1
  std::vector<Rational> log1p(order + 1);
  for (std::size_t n = 1; n <= order; ++n) log1p[n] = sign_power(n - 1) * factorial(n - 1);
  return series_pow(RationalSeries::from_sequence(std::move(log1p)), k) * (Rational(1) / factorial(k));
}

RationalSeries euler_numbers(std::size_t order) {
  const auto half_sum =
      (RationalSeries::exponential(order, Rational(1)) + RationalSeries::constant(order, Rational(1))) *
      Rational(1, 2);
  return series_recip(half_sum);
}

}  // namespace egf

namespace enumerate {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw SizeLimit(std::string("enumeration bound exceeded: ") + what);
}

std::vector<unsigned> identity(unsigned n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

// Cycle id per element; returns the number of cycles.
unsigned cycle_ids(const std::vector<unsigned>& perm, std::vector<unsigned>& ids) {
  const unsigned none = static_cast<unsigned>(perm.size());
  ids.assign(perm.size(), none);
  unsigned cycles = 0;
  for (unsigned start = 0; start < perm.size(); ++start) {
    if (ids[start] != none) continue;
    for (unsigned i = start; ids[i] == none; i = perm[i]) ids[i] = cycles;
    ++cycles;
  }
  return cycles;
}

bool fixed_point_free(const std::vector<unsigned>& perm) {
  for (unsigned i = 0; i < perm.size(); ++i) {
    if (perm[i] == i) return false;
  }
  return true;
}

// Restricted growth strings: counts partitions by block count.
void count_rgs(std::vector<unsigned>& rgs, unsigned pos, unsigned blocks, std::vector<std::uint64_t>& by_blocks) {
  if (pos == rgs.size()) {
    ++by_blocks[blocks];
    return;
  }
  for (unsigned b = 0; b <= blocks; ++b) {
    rgs[pos] = b;
    count_rgs(rgs, pos + 1, std::max(blocks, b + 1), by_blocks);
  }
}

}  // namespace

std::uint64_t derangements(unsigned n) {
  require(n <= 9, "derangements needs n <= 9");
  auto perm = identity(n);
  std::uint64_t count = 0;
  do {
    if (fixed_point_free(perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::uint64_t r_derangements(unsigned n, unsigned r) {
  require(n + r <= 9, "r-derangements needs n + r <= 9");
  if (r > n) throw InvalidParameter("r-derangements need r <= n");
  auto perm = identity(n + r);
  std::vector<unsigned> ids;
  std::vector<bool> seen;
  std::uint64_t count = 0;
  do {
    if (!fixed_point_free(perm)) continue;
    cycle_ids(perm, ids);
    seen.assign(n + r, false);
    bool distinct = true;
    for (unsigned i = 0; i < r && distinct; ++i) {
      if (seen[ids[i]]) distinct = false;
      seen[ids[i]] = true;
    }
    if (distinct) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::uint64_t set_partitions(unsigned n, unsigned k) {
  require(n <= 12, "set partitions need n <= 12");
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<unsigned> rgs(n, 0);
  std::vector<std::uint64_t> by_blocks(n + 1, 0);
  count_rgs(rgs, 1, 1, by_blocks);
  return k <= n ? by_blocks[k] : 0;
}

std::uint64_t ordered_set_partitions(unsigned n) {
  require(n <= 8, "ordered set partitions need n <= 8");
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (unsigned k = 1; k <= n; ++k) {
    // every map {1..n} -> {1..k}, keep the surjective ones
    std::vector<unsigned> f(n, 0);
    std::vector<unsigned> hits(k);
    while (true) {
      std::fill(hits.begin(), hits.end(), 0u);
      for (unsigned v : f) ++hits[v];
      if (std::all_of(hits.begin(), hits.end(), [](unsigned h) { return h > 0; })) ++total;
      unsigned i = 0;
      while (i < n && ++f[i] == k) f[i++] = 0;
      if (i == n) break;
    }
  }
  return total;
}

std::uint64_t permutations_with_cycles(unsigned n, unsigned k) {
  require(n <= 9, "cycle counting needs n <= 9");
  auto perm = identity(n);
  std::vector<unsigned> ids;
  std::uint64_t count = 0;
  do {
    if (cycle_ids(perm, ids) == k) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace enumerate

}  // namespace derange::classical
