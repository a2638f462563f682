#include "derange/moments.hpp"

#include <mutex>
#include <sstream>
#include <utility>

#include "derange/errors.hpp"

namespace derange::moments {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long parse_integer(std::string_view text) {
  const Rational q = Rational::parse(text);
  if (!q.is_integer() || text.find('/') != std::string_view::npos) {
    throw ParseError("expected an integer, got '" + std::string(text) + "'");
  }
  return std::stol(q.numerator());
}

void require_probability(const Rational& p, const char* what) {
  if (p < Rational(0) || p > Rational(1)) throw InvalidParameter(std::string(what) + ": p must lie in [0, 1]");
}

void validate(const Distribution& dist) {
  std::visit(overloaded{
                 [](const Constant&) {},
                 [](const Bernoulli& d) { require_probability(d.p, "bernoulli"); },
                 [](const Binomial& d) { require_probability(d.p, "binomial"); },
                 [](const Poisson& d) {
                   if (d.lambda < Rational(0)) throw InvalidParameter("poisson: lambda must be >= 0");
                 },
                 [](const Geometric& d) {
                   if (d.p <= Rational(0) || d.p > Rational(1)) throw InvalidParameter("geometric: p must lie in (0, 1]");
                 },
                 [](const UniformDiscrete& d) {
                   if (d.low > d.high) throw InvalidParameter("uniform: low must not exceed high");
                 },
                 [](const Gamma& d) {
                   if (d.alpha <= Rational(0) || d.beta <= Rational(0)) {
                     throw InvalidParameter("gamma: alpha and beta must be positive");
                   }
                 },
                 [](const Explicit&) {},
             },
             dist);
}

void expect_arity(const std::vector<std::string_view>& parts, std::size_t n, std::string_view text) {
  if (parts.size() != n) throw ParseError("wrong number of parameters in '" + std::string(text) + "'");
}

}  // namespace

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts.front();
  Distribution dist = Constant{Rational(0)};
  if (kind == "const") {
    expect_arity(parts, 2, text);
    dist = Constant{Rational::parse(parts[1])};
  } else if (kind == "bernoulli") {
    expect_arity(parts, 2, text);
    dist = Bernoulli{Rational::parse(parts[1])};
  } else if (kind == "binomial") {
    expect_arity(parts, 3, text);
    const long trials = parse_integer(parts[1]);
    if (trials < 0) throw InvalidParameter("binomial: trial count must be nonnegative");
    dist = Binomial{static_cast<unsigned>(trials), Rational::parse(parts[2])};
  } else if (kind == "poisson") {
    expect_arity(parts, 2, text);
    dist = Poisson{Rational::parse(parts[1])};
  } else if (kind == "geometric") {
    expect_arity(parts, 2, text);
    dist = Geometric{Rational::parse(parts[1])};
  } else if (kind == "uniform") {
    expect_arity(parts, 3, text);
    dist = UniformDiscrete{parse_integer(parts[1]), parse_integer(parts[2])};
  } else if (kind == "gamma") {
    expect_arity(parts, 3, text);
    dist = Gamma{Rational::parse(parts[1]), Rational::parse(parts[2])};
  } else if (kind == "moments") {
    expect_arity(parts, 2, text);
    Explicit e;
    for (auto item : split(parts[1], ',')) e.moments.push_back(Rational::parse(item));
    dist = std::move(e);
  } else {
    throw ParseError("unknown distribution '" + std::string(kind) + "'");
  }
  validate(dist);
  return DistributionSpec(std::move(dist));
}

std::string DistributionSpec::to_string() const {
  return std::visit(
      overloaded{
          [](const Constant& d) { return "const:" + d.value.to_string(); },
          [](const Bernoulli& d) { return "bernoulli:" + d.p.to_string(); },
          [](const Binomial& d) { return "binomial:" + std::to_string(d.trials) + ":" + d.p.to_string(); },
          [](const Poisson& d) { return "poisson:" + d.lambda.to_string(); },
          [](const Geometric& d) { return "geometric:" + d.p.to_string(); },
          [](const UniformDiscrete& d) { return "uniform:" + std::to_string(d.low) + ":" + std::to_string(d.high); },
          [](const Gamma& d) { return "gamma:" + d.alpha.to_string() + ":" + d.beta.to_string(); },
          [](const Explicit& d) {
            std::string out = "moments:";
            for (std::size_t i = 0; i < d.moments.size(); ++i) {
              if (i) out += ",";
              out += d.moments[i].to_string();
            }
            return out;
          },
      },
      dist_);
}

bool DistributionSpec::is_unit_gamma() const {
  const auto* g = std::get_if<Gamma>(&dist_);
  return g && g->alpha == Rational(1) && g->beta == Rational(1);
}

bool DistributionSpec::is_constant_one() const {
  const auto* c = std::get_if<Constant>(&dist_);
  return c && c->value == Rational(1);
}

struct MomentProvider::Impl {
  explicit Impl(DistributionSpec s) : spec(std::move(s)) {}

  DistributionSpec spec;
  mutable std::mutex mutex;
  mutable std::vector<Rational> moments{Rational(1)};
  // sums[m][n] = E[S_m^n]
  mutable std::vector<std::vector<Rational>> sums{{Rational(1)}};

  std::optional<unsigned> max_moment() const {
    if (const auto* e = std::get_if<Explicit>(&spec.distribution())) {
      return static_cast<unsigned>(e->moments.size());
    }
    return std::nullopt;
  }

  // Next moment given moments[0..n-1]; caller holds the lock.
  Rational next_moment(unsigned n) const {
    return std::visit(
        overloaded{
            [&](const Constant& d) { return pow(d.value, n); },
            [&](const Bernoulli& d) { return d.p; },
            [&](const Binomial& d) {
              const Rational q = Rational(1) - d.p;
              Rational acc;
              for (unsigned j = 1; j <= d.trials; ++j) {
                acc += binomial(d.trials, j) * pow(d.p, j) * pow(q, d.trials - j) * pow(Rational(j), n);
              }
              return acc;
            },
            [&](const Poisson& d) {
              // E[Y^n] = lambda * sum_k binom(n-1,k) E[Y^k]
              Rational acc;
              for (unsigned k = 0; k < n; ++k) acc += binomial(n - 1, k) * moments[k];
              return d.lambda * acc;
            },
            [&](const Geometric& d) {
              // Y = 1 w.p. p, else 1 + Y':  p E[Y^n] = p + q sum_{k<n} binom(n,k) E[Y^k]
              const Rational q = Rational(1) - d.p;
              Rational acc;
              for (unsigned k = 0; k < n; ++k) acc += binomial(n, k) * moments[k];
              return (d.p + q * acc) / d.p;
            },
            [&](const UniformDiscrete& d) {
              Rational acc;
              for (long j = d.low; j <= d.high; ++j) acc += pow(Rational(j), n);
              return acc / Rational(d.high - d.low + 1);
            },
            [&](const Gamma& d) { return moments[n - 1] * (d.alpha + Rational(n - 1)) / d.beta; },
            [&](const Explicit& d) {
              if (n > d.moments.size()) throw MomentOutOfRange(n);
              return d.moments[n - 1];
            },
        },
        spec.distribution());
  }

  Rational moment_locked(unsigned n) const {
    while (moments.size() <= n) moments.push_back(next_moment(static_cast<unsigned>(moments.size())));
    return moments[n];
  }

  Rational moment(unsigned n) const {
    std::lock_guard lock(mutex);
    return moment_locked(n);
  }

  Rational sum_moment(unsigned m, unsigned n) const {
    std::lock_guard lock(mutex);
    for (unsigned j = 0; j <= n; ++j) moment_locked(j);
    if (sums.size() <= m) sums.resize(m + 1);
    auto& row0 = sums[0];
    while (row0.size() <= n) row0.emplace_back(0);
    for (unsigned mm = 1; mm <= m; ++mm) {
      auto& row = sums[mm];
      const auto& prev = sums[mm - 1];
      for (unsigned j = static_cast<unsigned>(row.size()); j <= n; ++j) {
        Rational acc;
        for (unsigned k = 0; k <= j; ++k) acc += binomial(j, k) * moments[k] * prev[j - k];
        row.push_back(std::move(acc));
      }
    }
    return sums[m][n];
  }

  bool has_sampler() const { return !std::holds_alternative<Explicit>(spec.distribution()); }

  double draw(std::mt19937_64& rng) const {
    return std::visit(
        overloaded{
            [&](const Constant& d) { return d.value.to_double(); },
            [&](const Bernoulli& d) { return std::bernoulli_distribution(d.p.to_double())(rng) ? 1.0 : 0.0; },
            [&](const Binomial& d) {
              return static_cast<double>(std::binomial_distribution<long>(d.trials, d.p.to_double())(rng));
            },
            [&](const Poisson& d) {
              if (d.lambda.is_zero()) return 0.0;
              return static_cast<double>(std::poisson_distribution<long>(d.lambda.to_double())(rng));
            },
            [&](const Geometric& d) {
              if (d.p == Rational(1)) return 1.0;
              return static_cast<double>(std::geometric_distribution<long>(d.p.to_double())(rng) + 1);
            },
            [&](const UniformDiscrete& d) {
              return static_cast<double>(std::uniform_int_distribution<long>(d.low, d.high)(rng));
            },
            [&](const Gamma& d) {
              return std::gamma_distribution<double>(d.alpha.to_double(), 1.0 / d.beta.to_double())(rng);
            },
            [&](const Explicit&) -> double { throw NoSampler(); },
        },
        spec.distribution());
  }
};

MomentProvider::MomentProvider(const DistributionSpec& spec) : impl_(std::make_shared<Impl>(spec)) {
  validate(spec.distribution());
}

const DistributionSpec& MomentProvider::spec() const { return impl_->spec; }

std::string MomentProvider::label() const {
  const std::string base = impl_->spec.to_string();
  return negated_ ? "neg(" + base + ")" : base;
}

Rational MomentProvider::moment(unsigned n) const {
  Rational m = impl_->moment(n);
  return negated_ && n % 2 == 1 ? -m : m;
}

std::optional<unsigned> MomentProvider::max_moment() const { return impl_->max_moment(); }

Rational MomentProvider::sum_moment(unsigned m, unsigned n) const {
  Rational s = impl_->sum_moment(m, n);
  return negated_ && n % 2 == 1 ? -s : s;
}

bool MomentProvider::has_sampler() const { return impl_->has_sampler(); }

double MomentProvider::draw(std::mt19937_64& rng) const {
  const double y = impl_->draw(rng);
  return negated_ ? -y : y;
}

MomentProvider MomentProvider::negate() const { return MomentProvider(impl_, !negated_); }

Rational shifted_power_moment(const MomentProvider& p, const Rational& x, unsigned n) {
  Rational acc;
  for (unsigned j = 0; j <= n; ++j) {
    acc += binomial(n, j) * pow(x, n - j) * sign_power(j) * p.moment(j);
  }
  return acc;
}

Poly shifted_power_moment_poly(const MomentProvider& p, unsigned n) {
  std::vector<Rational> coeffs(n + 1);
  for (unsigned j = 0; j <= n; ++j) coeffs[n - j] = binomial(n, j) * sign_power(j) * p.moment(j);
  return Poly(std::move(coeffs));
}

std::vector<double> sample(const MomentProvider& p, std::uint64_t seed, std::size_t count) {
  if (!p.has_sampler()) throw NoSampler();
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto& y : out) y = p.draw(rng);
  return out;
}

std::vector<DistributionSpec> default_suite() {
  std::vector<DistributionSpec> suite;
  for (const char* text : {"const:1", "const:3/2", "bernoulli:1/3", "binomial:4:1/2", "poisson:2", "geometric:1/2",
                           "gamma:1:1", "gamma:3:2"}) {
    suite.push_back(DistributionSpec::parse(text));
  }
  return suite;
}

}  // namespace derange::moments
