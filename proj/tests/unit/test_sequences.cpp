#include <gtest/gtest.h>

#include "betakit/error.hpp"
#include "betakit/language.hpp"
#include "betakit/sequences.hpp"
#include "betakit/specification.hpp"

using namespace betakit;

namespace {

const std::vector<std::pair<const char*, const char*>> kParams = {
    {"0.25", "2.5"}, {"0.5", "3.2"}, {"0.1", "2.2"}, {"0.3", "3.7"}};

}  // namespace

TEST(Decomposition, EdgesOfBAreDiagonalsFlatsAndVerticalResets) {
  for (const auto& [alpha, beta] : kParams) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 210);
    const auto g = HofbauerGraph::build(kp, 200);
    const auto dec = decompose_b(kp, g, 200);
    std::size_t covered = 0;
    for (const Segment& s : dec.segments) {
      EXPECT_EQ(s.start, covered + 1);
      covered += s.length;
    }
    EXPECT_EQ(covered, 200U);
    for (EdgeClass c : dec.classes) {
      EXPECT_TRUE(c == EdgeClass::Diagonal || c == EdgeClass::HorizontalFlat || c == EdgeClass::VerticalReset ||
                  c == EdgeClass::VerticalFlat)
          << to_string(c);
    }
    EXPECT_EQ(dec.reset_indices.size(), dec.diagonal_lengths.size());
  }
}

TEST(ComparisonC, DiffersFromBOnlyAtFlatsAndIsAdmissible) {
  for (const auto& [alpha, beta] : kParams) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 310);
    const auto g = HofbauerGraph::build(kp, 300);
    const auto dec = decompose_b(kp, g, 300);
    const Word c = build_c(kp, g, 300);
    std::vector<bool> flat(301, false);
    for (std::size_t p : dec.flat_indices) flat[p] = true;
    for (std::size_t i = 1; i <= 300; ++i) {
      if (!flat[i]) EXPECT_EQ(c[i - 1], kp.b[i - 1]);
      else EXPECT_EQ(c[i - 1], 1);
    }
    for (std::size_t n = 1; n <= 300; n += 23) EXPECT_TRUE(is_admissible(c.prefix(n), kp).admissible) << n;
    EXPECT_TRUE(is_admissible(c, kp).admissible);
  }
}

TEST(ComparisonD, BlocksAreRootReturning) {
  std::size_t built = 0;
  for (const auto& [alpha, beta] : kParams) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 410);
    const auto g = HofbauerGraph::build(kp, 300);
    DSequence d;
    try {
      d = build_d(kp, g, 300, 400);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnboundedDaEvidence);
      continue;
    }
    ++built;
    EXPECT_EQ(d.d.size(), 300U);
    EXPECT_EQ(d.n, d.l + 1 + d.eta_word.size());
    EXPECT_TRUE(is_admissible(d.d, kp).admissible);
    // b_1^{L+1} eta leads back to the root.
    EXPECT_EQ(vtx(kp.b.prefix(d.l + 1) + d.eta_word, g), (Vertex{0, 0}));
    for (const Word& block : d.blocks) EXPECT_EQ(block.size(), d.n + 1);
  }
  EXPECT_GE(built, 2U);
}

TEST(Cases, EditCounts) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 210);
  const auto g = HofbauerGraph::build(kp, 200);
  const auto dec = decompose_b(kp, g, 200);
  EXPECT_EQ(edit_counts(kp, g, 200, BCase::B2), dec.reset_indices.size());
  std::size_t above_one = 0;
  for (std::size_t p : dec.flat_indices) above_one += kp.b[p - 1] > 1 ? 1 : 0;
  EXPECT_EQ(edit_counts(kp, g, 200, BCase::B1), above_one);
  EXPECT_THROW(edit_counts(kp, g, 200, BCase::Undetermined), Error);
  const BCase which = classify_case(kp, g, 200);
  EXPECT_NE(which, BCase::Undetermined);
}

TEST(Dichotomy, HoldsForBoundedDa) {
  for (const auto& [alpha, beta] : kParams) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 410);
    const auto g = HofbauerGraph::build(kp, 300);
    EXPECT_TRUE(dichotomy(kp, g, 300, 400).holds()) << alpha << " " << beta;
  }
}
