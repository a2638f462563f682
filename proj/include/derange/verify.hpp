#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "derange/egf_series.hpp"
#include "derange/moments.hpp"
#include "derange/probabilistic.hpp"
#include "derange/rational.hpp"

namespace derange::verify {

enum class TheoremId {
  T2_1,
  T2_2,
  T2_3,
  T2_4,
  T2_5,
  T2_6,
  T2_7,
  T2_8,
  T2_9,
  T2_10,
  T2_11,
  T2_12,
  GammaMoment,
  // Definition-level dual paths: closed form against generating function.
  Stirling2Y,
  BellY,
  EulerY,
};

std::string_view theorem_name(TheoremId id);
const std::vector<TheoremId>& all_theorems();
/// Parses `all` or a comma list such as `2.1,2.4,gamma-moment`. Throws ParseError.
std::vector<TheoremId> parse_theorem_list(std::string_view text);

enum class Status { ExactPass, NumericPass, Fail, Skipped };
std::string_view status_name(Status s);

struct TheoremReport {
  TheoremId theorem;
  std::string dist;
  unsigned n = 0;
  std::optional<unsigned> r;
  std::optional<Rational> x;
  Status status = Status::Fail;
  std::optional<double> residual;
  std::optional<std::string> lhs;
  std::optional<std::string> rhs;
  std::optional<std::string> reason;

  bool passed() const { return status == Status::ExactPass || status == Status::NumericPass; }
};

/// Abel summation of the convolution identity's divergent series.
struct AbelConfig {
  /// Strictly increasing, each in (0, 1). The two intermediate radii keep the
  /// extrapolation error below 1e-6 for n <= 6 across the default suite.
  std::vector<double> radii{0.9, 0.95, 0.99, 0.995, 0.999};
  /// Truncate once past the peak term and below this magnitude.
  double tail_epsilon = 1e-9;
  /// Hard cap on the number of terms per radius.
  unsigned max_terms = 200000;
  /// Acceptance bound on |extrapolated - exact| / max(1, |exact|).
  double tolerance = 1e-4;

  /// Throws InvalidParameter when the radii are not strictly increasing in (0, 1).
  void validate() const;
};

/// Lazily built generating-function expansions for one context; the
/// kernel side of every dual-path check. Not thread-safe; use one per worker.
class Kernels {
 public:
  explicit Kernels(const prob::ProbabilisticContext& ctx);

  const prob::ProbabilisticContext& ctx() const { return *ctx_; }

  const PolySeries& derangement_polys();
  const PolySeries& type2_polys();
  const PolySeries& bell_polys();
  const RationalSeries& euler_numbers();
  const RationalSeries& r_derangements(unsigned r);
  const RationalSeries& stirling2_column(unsigned k);
  /// Closed-form {l k}_Y, memoized.
  const Rational& stirling2(unsigned l, unsigned k);

 private:
  const prob::ProbabilisticContext* ctx_;
  std::optional<PolySeries> derangement_polys_;
  std::optional<PolySeries> type2_polys_;
  std::optional<PolySeries> bell_polys_;
  std::optional<RationalSeries> euler_;
  std::map<unsigned, RationalSeries> r_derangements_;
  std::map<unsigned, RationalSeries> stirling2_columns_;
  std::map<std::pair<unsigned, unsigned>, Rational> stirling2_values_;
};

// Individual checks. Each compares two or more independently computed
// sides and reports ExactPass or Fail with both sides rendered.

/// D_n^Y(x): generating function = n! sum E[(x-Y)^m]/m! = sum binom(n,l) D_l^Y x^{n-l}.
TheoremReport check_T2_1(Kernels& k, unsigned n);
/// D_n^Y(x) - n D_{n-1}^Y(x) = E[(x-Y)^n] as polynomials; n >= 1.
TheoremReport check_T2_2(Kernels& k, unsigned n);
/// phi_n^Y(1-x) = sum_l sum_k binom(n,l) {l k}_Y D_k(x) (-1)^k E[Y^{n-l}].
TheoremReport check_T2_3(Kernels& k, unsigned n, const Rational& x);
/// Exact generating-function form of the convolution identity, for every n <= n_max.
std::vector<TheoremReport> check_T2_4_egf(Kernels& k, unsigned n_max, const Rational& x);
/// Raw material of one Abel-summed evaluation of the convolution identity.
struct AbelEvaluation {
  Rational x;
  /// Left side, exact.
  Rational exact;
  /// 2 e^{x-1} sum_{m<=M} D_m(x) (-rho)^m / m! E[S_m^n], one entry per radius.
  std::vector<double> partial;
  /// Truncation point M per radius.
  std::vector<unsigned> terms;
  /// Richardson (Neville) extrapolation of `partial` to rho = 1.
  double extrapolated = 0;
  /// |extrapolated - exact| / max(1, |exact|).
  double residual = 0;
};

/// Evaluates the Abel partial sums for several x at once; the moment
/// polynomial m -> E[S_m^n] is shared. Throws TailBoundUnmet.
std::vector<AbelEvaluation> abel_evaluate(Kernels& k, unsigned n, const std::vector<Rational>& xs,
                                          const AbelConfig& cfg);

/// Abel-summed infinite series with Richardson extrapolation in 1 - rho.
TheoremReport check_T2_4_abel(Kernels& k, unsigned n, const Rational& x, const AbelConfig& cfg);
/// Several x values at once, sharing the moment polynomial; same results as one-by-one.
std::vector<TheoremReport> check_T2_4_abel(Kernels& k, unsigned n, const std::vector<Rational>& xs,
                                           const AbelConfig& cfg);
/// Closed form against the generating function of D_n^{(r,Y)}.
TheoremReport check_T2_5(Kernels& k, unsigned n, unsigned r);
/// Sum over D_{n-l}^Y against the closed form.
TheoremReport check_T2_6(Kernels& k, unsigned n, unsigned r);
/// E[Y^n] recovered from r-derangement numbers.
TheoremReport check_T2_7(Kernels& k, unsigned n, unsigned r);
/// D_{n+r}^{(r,Y)} against (n+r)! sum binom(r+l-1,l) D_{n-l}^Y/(n-l)!.
TheoremReport check_T2_8(Kernels& k, unsigned n, unsigned r);
/// d_n^Y(x): explicit sum = generating function = recurrence.
TheoremReport check_T2_9(Kernels& k, unsigned n);
/// sum_m d_m^Y(x) {n m} = sum_m sum_l (-1)^l {m l} binom(n,m) E[Y^l] F_{n-m}(x).
TheoremReport check_T2_10(Kernels& k, unsigned n);
/// Unsigned first-kind double sum against the explicit sum.
TheoremReport check_T2_11(Kernels& k, unsigned n);
/// Y ~ Gamma(1,1): D_n^Y(x) = n! sum_l (-1)^l D_l(1-x)/l!. Throws InvalidParameter for other Y.
TheoremReport check_T2_12(Kernels& k, unsigned n, const Rational& x);
/// X ~ Gamma(1,1): E[(X - 1 + p)^n] = D_n(p), for every n <= n_max.
std::vector<TheoremReport> check_gamma_moment_identity(const Rational& p, unsigned n_max);
/// Row n of {n k}_Y: alternating sum against (E[e^{tY}] - 1)^k / k!.
TheoremReport check_stirling2Y(Kernels& k, unsigned n);
/// phi_n^Y(x): Stirling sum against exp(x (E[e^{tY}] - 1)).
TheoremReport check_bellY(Kernels& k, unsigned n);
/// E_n^Y: series reciprocal against the recurrence from (E[e^{tY}] + 1) E^Y = 2.
TheoremReport check_eulerY(Kernels& k, unsigned n);

struct SweepConfig {
  unsigned n_max = 12;
  unsigned r_max = 5;
  std::vector<Rational> xs{Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(3, 2)};
  std::vector<TheoremId> theorems = all_theorems();
  unsigned abel_n_max = 6;
  std::vector<Rational> abel_xs{Rational(0), Rational(1, 2), Rational(1)};
  AbelConfig abel;
};

/// Runs the selected checks over every distribution. Ordering is
/// (theorem, distribution, n, r, x). Missing moments become Skipped
/// entries; other per-cell errors become Fail entries.
std::vector<TheoremReport> check_all(const std::vector<moments::DistributionSpec>& suite, const SweepConfig& cfg);

/// JSON array, one object per line, fields in the order
/// theorem, dist, n, r, x, status, residual, lhs, rhs, reason.
std::string reports_to_json(const std::vector<TheoremReport>& reports);
std::string reports_to_csv(const std::vector<TheoremReport>& reports);

// Monte Carlo reconciliation.

struct McRecord {
  /// "moment" for E[Y^n], "D" for D_n^Y(x).
  std::string quantity;
  unsigned n = 0;
  std::optional<Rational> x;
  double estimate = 0;
  Rational exact;
  double std_error = 0;
  double z = 0;
};

/// Draws `samples` values of Y and estimates E[Y^n] and D_n^Y(x) for n <= n_max
/// (the latter through n! sum_{m<=n} (x - y)^m / m!). Throws NoSampler.
std::vector<McRecord> monte_carlo_reconcile(const moments::MomentProvider& y, unsigned n_max,
                                            const std::vector<Rational>& xs, std::size_t samples, std::uint64_t seed);

std::string mc_to_json(const std::vector<McRecord>& records);
std::string mc_to_csv(const std::vector<McRecord>& records);

}  // namespace derange::verify
