#include <gtest/gtest.h>

#include <random>

#include "betakit/coding.hpp"
#include "betakit/error.hpp"
#include "oracles.hpp"

using namespace betakit;

namespace {

struct Sample {
  Rational alpha;
  Rational beta;
};

std::vector<Sample> random_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rational alpha(static_cast<long>(rng() % 991), 991);
    Rational beta(static_cast<long>(1100 + rng() % 3400), 997);
    alpha.canonicalize();
    beta.canonicalize();
    out.push_back({alpha, beta});
  }
  return out;
}

// Value known only through an enclosure, so the library takes the interval path.
CertifiedReal opaque(const Rational& q) {
  return CertifiedReal::from_hook([q](mpfr_prec_t p) { return Interval::enclose(q, p); }, q.get_str());
}

}  // namespace

TEST(Kneading, TrivialFullShift) {
  const auto p = Parameters::parse("0", "3");
  EXPECT_EQ(p.ell, 2);
  EXPECT_EQ(kneading_a(p, 5).str(), "00000");
  EXPECT_EQ(kneading_b(p, 5).str(), "22222");
}

TEST(Kneading, BetaThreeAlphaThird) {
  const auto p = Parameters::parse("1/3", "3");
  EXPECT_EQ(p.ell, 3);
  EXPECT_EQ(kneading_b(p, 8).str(), "31111111");
  EXPECT_EQ(kneading_a(p, 6).str(), "011111");
}

TEST(Kneading, ExactPathMatchesRationalOrbit) {
  for (const auto& s : random_samples(60, 3)) {
    const auto p = Parameters::make(CertifiedReal::exact(s.alpha), CertifiedReal::exact(s.beta));
    const auto kp = compute_kneading(p, 80);
    EXPECT_EQ(kp.a.str(), oracle::str(oracle::orbit_of_zero(s.alpha, s.beta, 80))) << s.alpha << " " << s.beta;
    EXPECT_EQ(kp.b.str(), oracle::str(oracle::orbit_of_one(s.alpha, s.beta, 80))) << s.alpha << " " << s.beta;
  }
}

TEST(Kneading, IntervalPathMatchesRationalOrbit) {
  std::size_t compared = 0;
  for (const auto& s : random_samples(40, 17)) {
    const auto exact = Parameters::make(CertifiedReal::exact(s.alpha), CertifiedReal::exact(s.beta));
    const auto reference = kneading_sequence(exact, KneadingSide::A, 60);
    const auto reference_b = kneading_sequence(exact, KneadingSide::B, 60);
    // An orbit point exactly on a discontinuity cannot be decided from enclosures.
    if (!reference.endpoint_hits.empty() || !reference_b.endpoint_hits.empty()) continue;
    const auto p = Parameters::make(opaque(s.alpha), opaque(s.beta));
    ASSERT_FALSE(p.is_exact());
    const auto kp = compute_kneading(p, 60);
    EXPECT_EQ(kp.a.str(), oracle::str(oracle::orbit_of_zero(s.alpha, s.beta, 60)));
    EXPECT_EQ(kp.b.str(), oracle::str(oracle::orbit_of_one(s.alpha, s.beta, 60)));
    ++compared;
  }
  EXPECT_GT(compared, 20U);
}

TEST(Kneading, EndpointHitIsRightContinuous) {
  // alpha = 1/2, beta = 5/2: y = 1/2, then 7/4, ... ; pick alpha + beta x = 1 exactly.
  const auto p = Parameters::parse("1/2", "5/2");
  const auto seq = kneading_sequence(p, KneadingSide::A, 10);
  const auto ref = oracle::orbit_of_zero(Rational(1, 2), Rational(5, 2), 10);
  EXPECT_EQ(seq.digits.str(), oracle::str(ref));
  const auto q = Parameters::parse("2/5", "3/2");
  // 0 -> 2/5 -> 2/5 * 3/2 + 2/5 = 1: a hit at the second step.
  const auto hit = kneading_sequence(q, KneadingSide::A, 4);
  ASSERT_FALSE(hit.endpoint_hits.empty());
  EXPECT_EQ(hit.endpoint_hits.front(), 2U);
  EXPECT_EQ(hit.digits.str(), "0101");
  EXPECT_EQ(hit.digits.str(), oracle::str(oracle::orbit_of_zero(Rational(2, 5), Rational(3, 2), 4)));
}

TEST(Kneading, OpaqueEndpointStalls) {
  const auto q = Parameters::make(opaque(Rational(2, 5)), opaque(Rational(3, 2)));
  std::string why;
  const auto seq = kneading_sequence(q, KneadingSide::A, 5, &why);
  EXPECT_LT(seq.digits.size(), 5U);
  EXPECT_FALSE(why.empty());
  EXPECT_THROW(kneading_a(q, 5), Error);
}

TEST(Parameters, Validation) {
  EXPECT_THROW(Parameters::parse("1", "3"), Error);
  EXPECT_THROW(Parameters::parse("-0.1", "3"), Error);
  EXPECT_THROW(Parameters::parse("0.1", "1"), Error);
  EXPECT_EQ(Parameters::parse("0.5", "2.5").ell, 2);
  EXPECT_EQ(Parameters::parse("0.6", "2.5").ell, 3);
  EXPECT_TRUE(Parameters::parse("0.6", "2.5").beta_above_two);
  EXPECT_FALSE(Parameters::parse("0.1", "1.5").beta_above_two);
}

TEST(KneadingPair, RequireDepth) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 10);
  EXPECT_EQ(kp.certified_len, 10U);
  EXPECT_NO_THROW(kp.require_depth(10, "test"));
  try {
    kp.require_depth(11, "test");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientKneadingDepth);
  }
}

TEST(DMetric, CommonPrefix) {
  EXPECT_DOUBLE_EQ(d_metric(Word::parse("0121"), Word::parse("0122")), 0.125);
  EXPECT_DOUBLE_EQ(d_metric(Word::parse("1"), Word::parse("0")), 1.0);
  EXPECT_THROW(d_metric(Word::parse("012"), Word::parse("012")), Error);
}

TEST(KneadingJson, Fields) {
  const auto j = to_json(compute_kneading(Parameters::parse("0", "3"), 5));
  EXPECT_EQ(j["a_prefix"], "00000");
  EXPECT_EQ(j["b_prefix"], "22222");
  EXPECT_EQ(j["endpoint_convention"], "right-continuous");
}
