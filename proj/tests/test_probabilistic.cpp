#include <gtest/gtest.h>

#include "derange/classical.hpp"
#include "derange/errors.hpp"
#include "derange/probabilistic.hpp"
#include "oracles.hpp"

using namespace derange;
using namespace derange::prob;
using moments::make_provider;

namespace {

const std::vector<std::string> kSuite{"const:1",       "const:3/2",     "bernoulli:1/3", "binomial:4:1/2",
                                      "poisson:2",     "geometric:1/2", "gamma:1:1",     "gamma:3:2"};

ProbabilisticContext context(std::string_view text, unsigned n_max = 20) {
  return ProbabilisticContext(make_provider(text), n_max);
}

}  // namespace

TEST(Context, SeriesInvariants) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 20);
    EXPECT_EQ(ctx.mgf_series()[0], Rational(1));
    EXPECT_EQ(ctx.mgf_series().order(), 20u);
    for (unsigned n = 0; n <= 20; ++n) {
      EXPECT_EQ(ctx.neg_mgf_series()[n], (n % 2 ? Rational(-1) : Rational(1)) * ctx.mgf_series()[n]);
      EXPECT_EQ(ctx.mgf_series()[n], ctx.y().moment(n));
    }
  }
}

TEST(Context, RequireReportsMissingMoments) {
  const ProbabilisticContext ctx(make_provider("moments:1,2"), 6);
  EXPECT_EQ(ctx.available(), 2u);
  EXPECT_NO_THROW(ctx.require(2));
  EXPECT_THROW(ctx.require(3), MomentOutOfRange);
  EXPECT_THROW(ctx.require(7), InvalidParameter);
  EXPECT_THROW(prob_derangement_poly(ctx, 3), MomentOutOfRange);
}

TEST(ProbStirling2, Examples) {
  const classical::StirlingTables t(20);
  const auto one = context("const:1");
  for (unsigned n = 0; n <= 20; ++n) {
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(prob_stirling2(one, n, k), t.s2(n, k));
  }
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 10);
    for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(prob_stirling2(ctx, n, 0), Rational(n == 0 ? 1 : 0));
  }
  // E[e^{tY}] - 1 = p (e^t - 1) for Bernoulli(p).
  const auto bern = context("bernoulli:1/3", 12);
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_EQ(prob_stirling2(bern, n, k), oracle::power(Rational(1, 3), k) * t.s2(n, k));
    }
  }
}

TEST(ProbStirling2, ClosedFormMatchesKernel) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 14);
    for (unsigned k = 0; k <= 14; ++k) {
      const auto col = prob_stirling2_egf(ctx, k);
      for (unsigned n = 0; n <= 14; ++n) EXPECT_EQ(prob_stirling2(ctx, n, k), col[n]) << text << n << "," << k;
    }
  }
}

TEST(ProbBell, Examples) {
  const auto one = context("const:1");
  for (const auto& text : kSuite) EXPECT_EQ(prob_bell(context(text, 4), 0), Poly(1));
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(prob_bell(one, n)(Rational(1)), Rational(oracle::bell(n)));
  EXPECT_EQ(prob_bell(context("poisson:1", 3), 1), Poly::x());
}

TEST(ProbBell, ClosedFormMatchesKernel) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 16);
    const auto k = prob_bell_egf(ctx);
    for (unsigned n = 0; n <= 16; ++n) EXPECT_EQ(prob_bell(ctx, n), k[n]) << text << n;
  }
}

TEST(ProbEuler, Examples) {
  const auto ref = oracle::euler_numbers(20);
  const auto one = context("const:1");
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_euler(one, n), ref[n]);
  for (const auto& text : kSuite) EXPECT_EQ(prob_euler(context(text, 3), 0), Rational(1));
  const auto zero = context("const:0", 10);
  for (unsigned n = 1; n <= 10; ++n) EXPECT_EQ(prob_euler(zero, n), Rational(0));
}

TEST(ProbEuler, SatisfiesDefiningRelation) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 16);
    const auto e = prob_euler_egf(ctx);
    for (unsigned n = 0; n <= 16; ++n) {
      Rational acc = e[n];
      for (unsigned k = 0; k <= n; ++k) acc += oracle::choose(n, k) * e[k] * ctx.y().moment(n - k);
      EXPECT_EQ(acc, Rational(n == 0 ? 2 : 0)) << text << n;
      EXPECT_EQ(prob_euler(ctx, n), e[n]);
    }
  }
}

TEST(ProbDerangementPoly, Examples) {
  const auto one = context("const:1");
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_derangement_poly(one, n), classical::derangement_poly(n));
  for (const auto& text : kSuite) EXPECT_EQ(prob_derangement_poly(context(text, 2), 0), Poly(1));
  const auto g = context("gamma:1:1");
  for (unsigned n = 0; n <= 20; ++n) {
    Poly rhs;
    for (unsigned l = 0; l <= n; ++l) {
      const Poly shifted = classical::derangement_poly(l).compose(Poly(1) - Poly::x());
      rhs += shifted * (oracle::power(Rational(-1), l) / oracle::fact(l));
    }
    EXPECT_EQ(prob_derangement_poly(g, n), rhs * oracle::fact(n)) << n;
  }
}

TEST(ProbDerangementPoly, AllFormsAgree) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    const auto k = prob_derangement_poly_egf(ctx);
    for (unsigned n = 0; n <= 20; ++n) {
      const Poly first = prob_derangement_poly(ctx, n);
      EXPECT_EQ(first, prob_derangement_poly_convolution(ctx, n)) << text << n;
      EXPECT_EQ(first, k[n]) << text << n;
      EXPECT_EQ(first(Rational(0)), prob_derangement_number(ctx, n));
    }
  }
}

TEST(ProbDerangementNumber, Examples) {
  const auto one = context("const:1");
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_derangement_number(one, n), classical::derangement(n));
  const auto zero = context("const:0");
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_derangement_number(zero, n), oracle::fact(n));
  const auto bern = context("bernoulli:1/2", 6);
  EXPECT_EQ(prob_derangement_number(bern, 1), Rational(1, 2));
  // 1/(1-t) (1/2 + e^{-t}/2) as an ordinary series
  auto half = oracle::Ops::exp(6, Rational(-1));
  for (auto& c : half.c) c = c / Rational(2);
  half.c[0] += Rational(1, 2);
  const auto ops = oracle::Ops::inverse_power(6, 1) * half;
  for (unsigned n = 0; n <= 6; ++n) EXPECT_EQ(prob_derangement_number(bern, n), ops.egf()[n]);
}

TEST(ProbDerangementNumber, RecurrenceWithMoments) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    for (unsigned n = 1; n <= 20; ++n) {
      EXPECT_EQ(prob_derangement_number(ctx, n) - Rational(n) * prob_derangement_number(ctx, n - 1),
                oracle::power(Rational(-1), n) * ctx.y().moment(n));
    }
  }
}

TEST(ProbDerangementPoly, RecurrenceAsPolynomials) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    for (unsigned n = 1; n <= 20; ++n) {
      const Poly lhs = prob_derangement_poly(ctx, n) - prob_derangement_poly(ctx, n - 1) * Rational(n);
      EXPECT_EQ(lhs, moments::shifted_power_moment_poly(ctx.y(), n)) << text << n;
    }
  }
}

TEST(ProbRDerangement, Examples) {
  const auto one = context("const:1");
  for (unsigned r = 0; r <= 5; ++r) {
    for (unsigned n = r; n <= 20; ++n) EXPECT_EQ(prob_r_derangement(one, n, r), classical::r_derangement(n, r));
  }
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_r_derangement(ctx, n, 0), prob_derangement_number(ctx, n));
    for (unsigned r = 0; r <= 8; ++r) EXPECT_EQ(prob_r_derangement(ctx, r, r), oracle::fact(r));
    EXPECT_THROW(prob_r_derangement(ctx, 2, 3), IndexBelowR);
  }
}

TEST(ProbRDerangement, FormsAgree) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 25);
    for (unsigned r = 0; r <= 5; ++r) {
      const auto k = prob_r_derangement_egf(ctx, r);
      for (unsigned n = r; n <= 20; ++n) {
        const Rational closed = prob_r_derangement(ctx, n, r);
        EXPECT_EQ(closed, prob_r_derangement_via_derangements(ctx, n, r)) << text << n << "," << r;
        EXPECT_EQ(closed, k[n]) << text << n << "," << r;
      }
      for (unsigned n = 0; n <= 20; ++n) {
        EXPECT_EQ(prob_r_derangement(ctx, n + r, r), prob_r_derangement_shifted(ctx, n, r)) << text << n << "," << r;
      }
    }
  }
}

TEST(ProbRDerangement, RecoversMoments) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text, 25);
    for (unsigned r = 0; r <= 5; ++r) {
      for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(moment_from_r_derangements(ctx, n, r), ctx.y().moment(n));
    }
  }
}

TEST(ProbType2Poly, Examples) {
  const auto one = context("const:1");
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_type2_poly(one, n), classical::type2_poly(n));
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    EXPECT_EQ(prob_type2_poly(ctx, 0), Poly(1));
    for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(prob_type2_poly(ctx, n)(Rational(1)), prob_derangement_number(ctx, n));
  }
}

TEST(ProbType2Poly, FormsAgree) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    const auto k = prob_type2_poly_egf(ctx);
    for (unsigned n = 0; n <= 20; ++n) {
      const Poly closed = prob_type2_poly(ctx, n);
      EXPECT_EQ(closed, prob_type2_poly_recurrence(ctx, n)) << text << n;
      EXPECT_EQ(closed, prob_type2_poly_cycles(ctx, n)) << text << n;
      EXPECT_EQ(closed, k[n]) << text << n;
    }
  }
}

TEST(ProbType2Poly, RecurrenceStep) {
  for (const auto& text : kSuite) {
    const auto ctx = context(text);
    for (unsigned n = 1; n <= 20; ++n) {
      const Poly step = Poly::x() * prob_type2_poly(ctx, n - 1) * Rational(n) +
                        Poly(oracle::power(Rational(-1), n) * ctx.y().moment(n));
      EXPECT_EQ(prob_type2_poly(ctx, n), step);
    }
  }
}

TEST(Degeneration, UnitConstantGivesClassicalFamilies) {
  const auto one = context("const:1");
  const classical::StirlingTables t(20);
  for (unsigned n = 0; n <= 20; ++n) {
    EXPECT_EQ(prob_derangement_poly(one, n), classical::derangement_poly(n));
    EXPECT_EQ(prob_type2_poly(one, n), classical::type2_poly(n));
    EXPECT_EQ(prob_euler(one, n), classical::euler_number(n));
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(prob_stirling2(one, n, k), t.s2(n, k));
    for (unsigned r = 0; r <= std::min(n, 5u); ++r) {
      EXPECT_EQ(prob_r_derangement(one, n, r), classical::r_derangement(n, r));
    }
  }
}
