#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "betakit/certified.hpp"
#include "betakit/error.hpp"

using namespace betakit;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 20001) - 10000;
  const long den = static_cast<long>(rng() % 997) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Interval, OperationsEncloseExactResults) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational x = random_rational(rng), y = random_rational(rng);
    const Interval ix = Interval::enclose(x, 64), iy = Interval::enclose(y, 64);
    EXPECT_TRUE((ix + iy).contains(Rational(x + y)));
    EXPECT_TRUE((ix - iy).contains(Rational(x - y)));
    EXPECT_TRUE((ix * iy).contains(Rational(x * y)));
    if (y != 0) EXPECT_TRUE((ix / iy).contains(Rational(x / y)));
    EXPECT_TRUE((-ix).contains(Rational(-x)));
  }
}

TEST(Interval, FloorDecision) {
  Integer f;
  EXPECT_TRUE(Interval::enclose(Rational(7, 2), 64).floor_if_determined(f));
  EXPECT_EQ(f, 3);
  EXPECT_FALSE(Interval::between(Rational(29, 10), Rational(31, 10), 64).floor_if_determined(f));
}

TEST(Interval, DivisionByIntervalWithZeroThrows) {
  const Interval z = Interval::between(Rational(-1), Rational(1), 64);
  EXPECT_THROW(Interval::enclose(1L, 64) / z, Error);
}

TEST(CertifiedReal, ParsesDecimalsAndFractionsExactly) {
  EXPECT_EQ(*CertifiedReal::parse("0.25").exact_value(), Rational(1, 4));
  EXPECT_EQ(*CertifiedReal::parse("1/3").exact_value(), Rational(1, 3));
  EXPECT_EQ(*CertifiedReal::parse("1.5e-2").exact_value(), Rational(3, 200));
  EXPECT_EQ(*CertifiedReal::parse("-3").exact_value(), Rational(-3));
  EXPECT_THROW(CertifiedReal::parse("abc"), Error);
  EXPECT_THROW(CertifiedReal::parse("1/0"), Error);
}

TEST(CertifiedReal, ExactArithmeticFolds) {
  const auto x = CertifiedReal::parse("1/3") * CertifiedReal::parse("3") + CertifiedReal::parse("0.5");
  ASSERT_TRUE(x.is_exact());
  EXPECT_EQ(*x.exact_value(), Rational(3, 2));
}

TEST(CertifiedReal, RootOfRefinesToRequestedWidth) {
  const auto sqrt2 = CertifiedReal::root_of(
      [](const Interval& x, mpfr_prec_t p) { return x * x - Interval::enclose(2L, p); }, Rational(1), Rational(2),
      "sqrt(2)");
  const auto r = sqrt2.refine(200);
  EXPECT_TRUE(r.enclosure().width_at_most(200));
  // The square of the enclosure must straddle 2.
  const Interval sq = r.enclosure() * r.enclosure();
  EXPECT_TRUE(sq.contains(Rational(2)));
  EXPECT_NEAR(r.approx(), 1.4142135623730951, 1e-15);
}

TEST(CertifiedReal, RootOfWithoutSignChangeFails) {
  try {
    CertifiedReal::root_of([](const Interval& x, mpfr_prec_t p) { return x * x + Interval::enclose(1L, p); },
                           Rational(0), Rational(1), "none");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BracketFailure);
  }
}

TEST(CertifiedCompare, Verdicts) {
  const auto third = CertifiedReal::parse("1/3");
  EXPECT_EQ(certified_compare(third, CertifiedReal::parse("0.3333"), 256), ComparisonVerdict::ProvablyGreater);
  EXPECT_EQ(certified_compare(third, CertifiedReal::parse("1/3"), 256), ComparisonVerdict::ProvablyEqual);
  const auto hook = CertifiedReal::from_hook([](mpfr_prec_t p) { return Interval::enclose(Rational(1, 3), p); },
                                             "one third");
  // Equal values without an exact form stay undetermined.
  EXPECT_EQ(certified_compare(hook, third, 512), ComparisonVerdict::Undetermined);
  EXPECT_EQ(certified_compare(hook, CertifiedReal::parse("0.34"), 512), ComparisonVerdict::ProvablyLess);
}

TEST(PrecisionPolicy, HonoursEnvironment) {
  ::setenv("BETAKIT_MAX_BITS", "777", 1);
  EXPECT_EQ(PrecisionPolicy::current().max_bits, 777);
  ::unsetenv("BETAKIT_MAX_BITS");
  EXPECT_EQ(PrecisionPolicy::current().max_bits, 4096);
}
