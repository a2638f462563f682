#include <gmpxx.h>
#include <gtest/gtest.h>

#include "derange/egf_series.hpp"
#include "derange/errors.hpp"
#include "derange/poly.hpp"
#include "derange/rational.hpp"
#include "oracles.hpp"

using namespace derange;

namespace {

std::vector<Rational> seq(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

RationalSeries ones(std::size_t order) { return RationalSeries::exponential(order, Rational(1)); }

bool canonical(const Rational& q) {
  const mpz_class& num = q.raw().get_num();
  const mpz_class& den = q.raw().get_den();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return den > 0 && (num == 0 ? den == 1 : g == 1);
}

}  // namespace

TEST(Rational, ParsesAndRendersCanonically) {
  EXPECT_EQ(Rational::parse("-6/4").to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("10/5").to_string(), "2");
  EXPECT_EQ(Rational::parse("0/7").to_string(), "0");
  EXPECT_EQ(Rational::parse("-0").to_string(), "0");
  EXPECT_EQ(Rational::parse("123456789012345678901234567890").numerator(), "123456789012345678901234567890");
  EXPECT_EQ(Rational(3, -6).denominator(), "2");
  EXPECT_EQ(Rational(3, -6).numerator(), "-1");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "a", "1/2/3", "--1", "+1", "1.5", " 1", "1/-2"}) {
    EXPECT_THROW(Rational::parse(bad), ParseError) << bad;
  }
}

TEST(Rational, ExactArithmetic) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a - b - b, Rational(0));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_EQ(factorial(20).to_string(), "2432902008176640000");
  EXPECT_EQ(factorial(25).to_string(), "15511210043330985984000000");
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(2, 5), Rational(0));
}

TEST(Rational, GeneralizedBinomialConventions) {
  EXPECT_EQ(generalized_binomial(-1, -1), Rational(1));
  EXPECT_EQ(generalized_binomial(3, -1), Rational(0));
  EXPECT_EQ(generalized_binomial(0, -1), Rational(0));
  EXPECT_EQ(generalized_binomial(-1, 2), Rational(1));
  EXPECT_EQ(generalized_binomial(-2, 3), Rational(-4));
  EXPECT_EQ(generalized_binomial(4, 6), Rational(0));
  EXPECT_EQ(generalized_binomial(6, 2), Rational(15));
}

TEST(Rational, CanonicalAfterRandomPipelines) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    Rational acc = gen.rational();
    for (int step = 0; step < 8; ++step) {
      const Rational v = gen.nonzero_rational();
      switch (gen.integer(0, 3)) {
        case 0: acc += v; break;
        case 1: acc -= v; break;
        case 2: acc *= v; break;
        default: acc /= v; break;
      }
      ASSERT_TRUE(canonical(acc)) << acc;
      ASSERT_EQ(Rational::parse(acc.to_string()), acc);
    }
  }
}

TEST(Poly, ZeroIsEmpty) {
  EXPECT_TRUE(Poly().is_zero());
  EXPECT_EQ(Poly().degree(), Poly::kZeroDegree);
  EXPECT_EQ(Poly(seq({0, 0})), Poly());
  EXPECT_EQ((Poly::x() - Poly::x()).coeffs().size(), 0u);
  EXPECT_EQ(Poly().to_string(), "[]");
}

TEST(Poly, EvaluationAndRendering) {
  const Poly p(seq({1, -2, 2}));
  EXPECT_EQ(p.to_string(), "[1, -2, 2]");
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(p.compose(Poly::x() + Poly(1)), Poly(seq({1, 2, 2})));
  EXPECT_EQ(Poly::monomial(Rational(3), 2).coeff(2), Rational(3));
  EXPECT_EQ(p.coeff(7), Rational(0));
}

TEST(PolyProperty, DegreeOfProductIsAdditive) {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly a = gen.poly(6);
    const Poly b = gen.poly(6);
    const Poly prod = a * b;
    if (a.is_zero() || b.is_zero()) {
      EXPECT_TRUE(prod.is_zero());
    } else {
      EXPECT_EQ(prod.degree(), a.degree() + b.degree());
    }
    const Rational at = gen.rational();
    EXPECT_EQ(prod(at), a(at) * b(at));
    EXPECT_EQ((a + b)(at), a(at) + b(at));
  }
}

TEST(EgfSeries, SequenceRoundTrip) {
  oracle::Gen gen(3);
  for (std::size_t order = 0; order <= 12; ++order) {
    const auto s = gen.series(order);
    const auto copy = s.to_sequence();
    EXPECT_EQ(RationalSeries::from_sequence(copy).to_sequence(), copy);
    EXPECT_EQ(RationalSeries::from_sequence(copy).order(), order);
  }
  EXPECT_THROW(RationalSeries::from_sequence({}), InvalidParameter);
}

TEST(EgfSeries, MixedOrdersUseTheSmaller) {
  const auto a = ones(3);
  const auto b = ones(6);
  EXPECT_EQ((a + b).order(), 3u);
  EXPECT_EQ(series_mul(a, b).order(), 3u);
}

TEST(SeriesMul, ExpTimesExpNegIsOne) {
  const auto r = series_mul(ones(4), RationalSeries::exponential(4, Rational(-1)));
  EXPECT_EQ(r.to_sequence(), seq({1, 0, 0, 0, 0}));
}

TEST(SeriesMul, BinomialSquare) {
  const auto one_plus_t = RationalSeries::from_sequence(seq({1, 1, 0, 0, 0}));
  EXPECT_EQ(series_mul(one_plus_t, one_plus_t).to_sequence(), seq({1, 2, 2, 0, 0}));
}

TEST(SeriesMul, GeometricTimesExpNegCountsDerangements) {
  const auto r = series_mul(RationalSeries::geometric(6, Rational(1)), RationalSeries::exponential(6, Rational(-1)));
  for (unsigned n = 0; n <= 6; ++n) EXPECT_EQ(r[n], Rational(oracle::derangements(n))) << n;
}

TEST(SeriesMul, MatchesOrdinaryConvolution) {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gen.series(8);
    const auto b = gen.series(8);
    oracle::Ops oa(8), ob(8);
    for (unsigned n = 0; n <= 8; ++n) {
      oa.c[n] = a[n] / oracle::fact(n);
      ob.c[n] = b[n] / oracle::fact(n);
    }
    EXPECT_EQ(series_mul(a, b).to_sequence(), (oa * ob).egf());
  }
}

TEST(SeriesRecip, OfExponential) {
  EXPECT_EQ(series_recip(ones(5)).to_sequence(), RationalSeries::exponential(5, Rational(-1)).to_sequence());
}

TEST(SeriesRecip, HalfOfExpPlusOneGivesEulerNumbers) {
  const auto a = (ones(4) + RationalSeries::constant(4, Rational(1))) * Rational(1, 2);
  const auto r = series_recip(a);
  EXPECT_EQ(r.to_sequence(), (std::vector<Rational>{1, Rational(-1, 2), 0, Rational(1, 4), 0}));
  const auto euler = oracle::euler_numbers(12);
  const auto longer = series_recip((ones(12) + RationalSeries::constant(12, Rational(1))) * Rational(1, 2));
  EXPECT_EQ(longer.to_sequence(), euler);
}

TEST(SeriesRecip, OfConstant) {
  EXPECT_EQ(series_recip(RationalSeries::constant(3, Rational(2))).to_sequence(),
            RationalSeries::constant(3, Rational(1, 2)).to_sequence());
}

TEST(SeriesRecip, RejectsNonUnits) {
  EXPECT_THROW(series_recip(RationalSeries::from_sequence(seq({0, 1, 2}))), ZeroConstantTerm);
  const auto p = PolySeries::from_sequence({Poly::x(), Poly(1)});
  EXPECT_THROW(series_recip(p), ZeroConstantTerm);
  const auto q = PolySeries::from_sequence({Poly(Rational(3)), Poly::x()});
  EXPECT_EQ(series_mul(q, series_recip(q)), PolySeries::constant(1, Poly(1)));
}

TEST(SeriesExp, OfIdentityIsExponential) {
  const auto t = RationalSeries::from_sequence(seq({0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(series_exp(t).to_sequence(), ones(5).to_sequence());
}

TEST(SeriesExp, OfZeroIsOne) {
  EXPECT_EQ(series_exp(RationalSeries(4)).to_sequence(), seq({1, 0, 0, 0, 0}));
}

TEST(SeriesExp, OfExpMinusOneGivesBellNumbers) {
  const auto b = series_exp(ones(8) - RationalSeries::constant(8, Rational(1)));
  for (unsigned n = 0; n <= 8; ++n) EXPECT_EQ(b[n], Rational(oracle::bell(n))) << n;
}

TEST(SeriesExp, RejectsNonzeroConstant) { EXPECT_THROW(series_exp(ones(3)), NonzeroConstantTerm); }

TEST(SeriesScalePow, ZeroIsIdentity) {
  oracle::Gen gen(1);
  const auto a = gen.series(7);
  EXPECT_EQ(series_scale_pow(0, a), a);
}

TEST(SeriesScalePow, TimesExpNeg) {
  const auto r = series_scale_pow(1, RationalSeries::exponential(3, Rational(-1)));
  oracle::Ops t(3);
  t.c[1] = 1;
  EXPECT_EQ(r.to_sequence(), (t * oracle::Ops::exp(3, Rational(-1))).egf());
  EXPECT_EQ(r.to_sequence(), seq({0, 1, -2, 3}));
}

TEST(SeriesScalePow, TimesGeometric) {
  const auto r = series_scale_pow(2, RationalSeries::geometric(4, Rational(1)));
  EXPECT_EQ(r.to_sequence(), oracle::Ops::inverse_power(4, 1, 2).egf());
  EXPECT_EQ(r.to_sequence(), seq({0, 0, 2, 6, 24}));
}

TEST(SeriesScalePow, RejectsShiftPastOrder) {
  EXPECT_THROW(series_scale_pow(4, ones(3)), InvalidParameter);
}

TEST(SeriesPow, MatchesRepeatedProduct) {
  oracle::Gen gen(8);
  const auto a = gen.series(6);
  EXPECT_EQ(series_pow(a, 0), RationalSeries::constant(6, Rational(1)));
  EXPECT_EQ(series_pow(a, 3), series_mul(a, series_mul(a, a)));
}

TEST(SeriesProperty, RingLaws) {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto order = static_cast<std::size_t>(gen.integer(0, 12));
    const auto a = gen.series(order);
    const auto b = gen.series(order);
    const auto c = gen.series(order);
    ASSERT_EQ(series_mul(a, b), series_mul(b, a));
    ASSERT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    ASSERT_EQ(series_mul(a, b + c), series_mul(a, b) + series_mul(a, c));
    ASSERT_EQ(series_mul(a, RationalSeries::constant(order, Rational(1))), a);
  }
}

TEST(SeriesProperty, RingLawsOverPolynomials) {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto order = static_cast<std::size_t>(gen.integer(0, 8));
    const auto a = gen.poly_series(order, 3);
    const auto b = gen.poly_series(order, 3);
    const auto c = gen.poly_series(order, 3);
    ASSERT_EQ(series_mul(a, b), series_mul(b, a));
    ASSERT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    ASSERT_EQ(series_mul(a, b + c), series_mul(a, b) + series_mul(a, c));
  }
}

TEST(SeriesProperty, ReciprocalIsInverse) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto order = static_cast<std::size_t>(gen.integer(0, 12));
    auto c = gen.series(order).to_sequence();
    c[0] = gen.nonzero_rational();
    const auto a = RationalSeries::from_sequence(c);
    ASSERT_EQ(series_mul(a, series_recip(a)), RationalSeries::constant(order, Rational(1)));
  }
}

TEST(SeriesProperty, ExpTurnsSumsIntoProducts) {
  oracle::Gen gen(47);
  for (int trial = 0; trial < 120; ++trial) {
    const auto order = static_cast<std::size_t>(gen.integer(0, 10));
    auto ca = gen.series(order).to_sequence();
    auto cb = gen.series(order).to_sequence();
    ca[0] = 0;
    cb[0] = 0;
    const auto a = RationalSeries::from_sequence(ca);
    const auto b = RationalSeries::from_sequence(cb);
    ASSERT_EQ(series_exp(a + b), series_mul(series_exp(a), series_exp(b)));
  }
}

TEST(SeriesProperty, CoefficientsStayCanonical) {
  oracle::Gen gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = gen.series(10).to_sequence();
    c[0] = gen.nonzero_rational();
    const auto a = RationalSeries::from_sequence(c);
    auto d = c;
    d[0] = 0;
    const auto r = series_mul(series_recip(a), series_exp(RationalSeries::from_sequence(d)));
    for (const auto& q : r.to_sequence()) ASSERT_TRUE(canonical(q));
  }
}
