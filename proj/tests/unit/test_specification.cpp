#include <gtest/gtest.h>

#include <random>

#include "betakit/error.hpp"
#include "betakit/language.hpp"
#include "betakit/specification.hpp"
#include "oracles.hpp"

using namespace betakit;

namespace {

oracle::Digits digits(const Word& w) { return {w.begin(), w.end()}; }

}  // namespace

TEST(DSet, MatchesNaiveScan) {
  for (const auto& [alpha, beta] : std::vector<std::pair<const char*, const char*>>{
           {"0.25", "2.5"}, {"0.5", "3.2"}, {"0.1", "2.2"}, {"0.3", "3.7"}, {"0.77", "2.4"}}) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 160);
    for (DSetKind which : {DSetKind::Da, DSetKind::Db}) {
      const auto report = d_set(kp, which, 150);
      const auto text = digits((which == DSetKind::Da ? kp.a : kp.b).prefix(150));
      const auto& source = which == DSetKind::Da ? kp.b : kp.a;
      std::vector<std::size_t> expected;
      for (std::size_t n = 1; n <= 150; ++n) {
        if (oracle::occurs(digits(source.prefix(n)), text) != 0) expected.push_back(n);
      }
      ASSERT_EQ(report.found.size(), expected.size()) << alpha << " " << beta;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(report.found[i].n, expected[i]);
        EXPECT_EQ(report.found[i].j, oracle::occurs(digits(source.prefix(expected[i])), text));
      }
      EXPECT_EQ(report.max_found, expected.empty() ? 0 : expected.back());
    }
  }
}

TEST(SpecVerdict, StableParametersAreSpecified) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 401);
  const auto g = HofbauerGraph::build(kp, 64);
  const auto v = spec_verdict(kp, g, 400);
  EXPECT_EQ(v.verdict, SpecOutcome::SpecifiedAtDepth);
  ASSERT_TRUE(v.tau_bound.has_value());
  EXPECT_EQ(v.da_trend, DSetTrend::Stable);
  EXPECT_EQ(v.db_trend, DSetTrend::Stable);
}

TEST(SpecVerdict, FullShiftHasNoOccurrences) {
  const auto kp = compute_kneading(Parameters::parse("0", "3"), 101);
  const auto g = HofbauerGraph::build(kp, 10);
  const auto v = spec_verdict(kp, g, 100);
  EXPECT_EQ(v.da.max_found, 0U);
  EXPECT_EQ(v.db.max_found, 0U);
  EXPECT_EQ(v.verdict, SpecOutcome::SpecifiedAtDepth);
}

TEST(SpecVerdict, RequiresBetaAboveTwo) {
  const auto kp = compute_kneading(Parameters::parse("0.1", "1.5"), 50);
  const auto g = HofbauerGraph::build(kp, 10);
  try {
    spec_verdict(kp, g, 40);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(GsDecompose, SuffixIsPrefixOfB) {
  const auto kp = compute_kneading(Parameters::parse("0.5", "3.2"), 30);
  const auto g = HofbauerGraph::build(kp, 15);
  for (const Word& w : enumerate_words(7, kp)) {
    const auto [head, tail] = gs_decompose(w, g);
    EXPECT_EQ(head + tail, w);
    EXPECT_EQ(tail, kp.b.prefix(tail.size()));
    EXPECT_EQ(tail.size(), k_coordinates(w, kp).second);
    EXPECT_EQ(g_m_membership(w, tail.size(), g), true);
    if (tail.size() > 0) EXPECT_FALSE(g_m_membership(w, tail.size() - 1, g));
  }
}

TEST(Connector, ShortestAndAdmissible) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 60);
  const auto words = enumerate_words(4, kp);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Word& u = words[rng() % words.size()];
    const Word& w = words[rng() % words.size()];
    const auto v = find_connector(u, w, kp, 8);
    ASSERT_TRUE(v.has_value());
    EXPECT_TRUE(is_admissible(u + *v + w, kp).admissible);
    // Nothing shorter works.
    for (std::size_t len = 0; len < v->size(); ++len) {
      for (const Word& shorter : len == 0 ? std::vector<Word>{Word{}} : enumerate_words(len, kp)) {
        EXPECT_FALSE(is_admissible(u + shorter + w, kp).admissible);
      }
    }
  }
}
