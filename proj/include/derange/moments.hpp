#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "derange/poly.hpp"
#include "derange/rational.hpp"

namespace derange::moments {

// Distribution catalog. Parameters are exact; samplers convert to double.
struct Constant {
  Rational value;
};
struct Bernoulli {
  Rational p;
};
struct Binomial {
  unsigned trials;
  Rational p;
};
struct Poisson {
  Rational lambda;
};
/// Number of trials up to and including the first success: support {1, 2, ...}.
struct Geometric {
  Rational p;
};
struct UniformDiscrete {
  long low;
  long high;
};
/// Shape alpha, rate beta: E[Y^n] = alpha (alpha+1) ... (alpha+n-1) / beta^n.
struct Gamma {
  Rational alpha;
  Rational beta;
};
/// User-supplied raw moments m_1..m_K (m_0 = 1 implied). No sampler.
struct Explicit {
  std::vector<Rational> moments;
};

using Distribution =
    std::variant<Constant, Bernoulli, Binomial, Poisson, Geometric, UniformDiscrete, Gamma, Explicit>;

/// Parsed form of the text grammar `const:3/2`, `bernoulli:1/3`, `binomial:4:1/2`,
/// `poisson:2`, `geometric:1/2`, `uniform:0:5`, `gamma:3:2`, `moments:1,1/2,1/3`.
class DistributionSpec {
 public:
  explicit DistributionSpec(Distribution dist) : dist_(std::move(dist)) {}

  /// Throws ParseError on malformed text and InvalidParameter on out-of-range values.
  static DistributionSpec parse(std::string_view text);

  const Distribution& distribution() const { return dist_; }
  /// Canonical text form; parse(to_string()) reproduces the spec.
  std::string to_string() const;

  bool is_unit_gamma() const;
  bool is_constant_one() const;

  friend bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    return a.to_string() == b.to_string();
  }

 private:
  Distribution dist_;
};

/// A random variable Y presented through its exact raw moments E[Y^n],
/// with an optional sampler. Copies share one memo cache, which is
/// internally synchronized.
class MomentProvider {
 public:
  /// Validates the parameters; throws InvalidParameter.
  explicit MomentProvider(const DistributionSpec& spec);

  const DistributionSpec& spec() const;
  /// Whether this provider reports moments of -Y.
  bool negated() const { return negated_; }
  /// Display label: the spec text, wrapped as `neg(...)` when negated.
  std::string label() const;

  /// E[Y^n]. Throws MomentOutOfRange past the last explicit moment.
  Rational moment(unsigned n) const;
  /// Largest n with a known moment; nullopt when unbounded.
  std::optional<unsigned> max_moment() const;

  /// E[S_m^n] for S_m = Y_1 + ... + Y_m, S_0 = 0.
  Rational sum_moment(unsigned m, unsigned n) const;

  bool has_sampler() const;
  /// One draw of Y. Throws NoSampler.
  double draw(std::mt19937_64& rng) const;

  MomentProvider negate() const;

 private:
  struct Impl;
  MomentProvider(std::shared_ptr<Impl> impl, bool negated) : impl_(std::move(impl)), negated_(negated) {}

  std::shared_ptr<Impl> impl_;
  bool negated_ = false;
};

inline MomentProvider make_provider(const DistributionSpec& spec) { return MomentProvider(spec); }
inline MomentProvider make_provider(std::string_view text) { return MomentProvider(DistributionSpec::parse(text)); }

inline Rational sum_moment(const MomentProvider& p, unsigned m, unsigned n) { return p.sum_moment(m, n); }

/// Provider of -Y: moment(n) = (-1)^n E[Y^n].
inline MomentProvider negate_moments(const MomentProvider& p) { return p.negate(); }

/// E[(x - Y)^n] = sum_j binom(n,j) x^{n-j} (-1)^j E[Y^j].
Rational shifted_power_moment(const MomentProvider& p, const Rational& x, unsigned n);

/// E[(x - Y)^n] as a polynomial in x.
Poly shifted_power_moment_poly(const MomentProvider& p, unsigned n);

/// `count` draws from a std::mt19937_64 seeded with `seed`. Throws NoSampler.
std::vector<double> sample(const MomentProvider& p, std::uint64_t seed, std::size_t count);

/// The eight distributions the identity sweep runs over.
std::vector<DistributionSpec> default_suite();

}  // namespace derange::moments
