#include <gtest/gtest.h>

#include <algorithm>
#include <regex>
#include <tuple>
#include <set>
#include <sstream>

#include "betakit/error.hpp"
#include "betakit/graph.hpp"
#include "betakit/language.hpp"
#include "oracles.hpp"

using namespace betakit;

namespace {

bool labels_path(const Word& w, const HofbauerGraph& g) {
  try {
    pth(w, g);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAPath) return false;
    throw;
  }
}

}  // namespace

TEST(Graph, PathsAreExactlyTheLanguage) {
  for (const auto& [alpha, beta] : std::vector<std::pair<const char*, const char*>>{
           {"0.25", "2.5"}, {"0.5", "3.2"}, {"0.1", "2.2"}, {"0.6", "2.5"}}) {
    const auto kp = compute_kneading(Parameters::parse(alpha, beta), 20);
    const auto g = HofbauerGraph::build(kp, 12);
    for (std::size_t n = 1; n <= 6; ++n) {
      oracle::Digits w(n, 0);
      for (;;) {
        Word word;
        for (int x : w) word.push_back(static_cast<Digit>(x));
        EXPECT_EQ(labels_path(word, g), is_admissible(word, kp).admissible) << word.str();
        std::size_t i = n;
        while (i > 0 && w[i - 1] == kp.ell) w[--i] = 0;
        if (i == 0) break;
        ++w[i - 1];
      }
    }
  }
}

TEST(Graph, VertexOfWordIsItsKCoordinates) {
  const auto kp = compute_kneading(Parameters::parse("0.5", "3.2"), 24);
  const auto g = HofbauerGraph::build(kp, 12);
  for (const Word& w : enumerate_words(7, kp)) {
    const auto [k1, k2] = k_coordinates(w, kp);
    EXPECT_EQ(vtx(w, g), (Vertex{static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k2)})) << w.str();
  }
}

TEST(Graph, PicturedKneading) {
  const auto kp = KneadingPair::from_prefixes(Word::parse("0011201210"), Word::parse("2120210100"), 2);
  const auto g = HofbauerGraph::build(kp, 10);
  EXPECT_EQ(vtx(kp.a, g), (Vertex{10, 0}));
  EXPECT_EQ(vtx(kp.b, g), (Vertex{2, 10}));
  EXPECT_TRUE(g.find({9, 2}).has_value());
  EXPECT_EQ(g.vertices()[g.root()], (Vertex{0, 0}));
  const std::vector<std::tuple<Vertex, Digit, Vertex>> pictured{
      {{9, 2}, 0, {10, 0}}, {{9, 2}, 1, {0, 0}}, {{9, 2}, 2, {0, 3}}, {{4, 0}, 2, {5, 1}}, {{5, 1}, 0, {6, 0}},
      {{5, 1}, 1, {0, 2}},  {{7, 0}, 2, {8, 1}}, {{8, 1}, 1, {9, 2}}, {{0, 8}, 0, {1, 9}}, {{1, 9}, 0, {2, 10}},
      {{0, 0}, 1, {0, 0}},  {{1, 0}, 1, {0, 0}}, {{0, 2}, 1, {0, 0}}};
  for (const auto& [from, label, to] : pictured) {
    const Edge* e = g.edge_with_label(g.index_of(from), label);
    ASSERT_NE(e, nullptr) << from.name();
    EXPECT_EQ(e->target_vertex, to) << from.name() << " " << int(label);
  }
  // The words of length 3 are exactly the labels of length-3 paths.
  std::vector<Word> labels;
  for (const Edge& e1 : g.out_edges(g.root()))
    for (const Edge& e2 : g.out_edges(e1.target))
      for (const Edge& e3 : g.out_edges(e2.target)) labels.push_back(Word{e1.label, e2.label, e3.label});
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, enumerate_words(3, kp));
  EXPECT_TRUE(is_admissible(kp.b, kp).admissible);
  const auto r = is_admissible(Word::parse("2121"), kp);
  ASSERT_FALSE(r.admissible);
  EXPECT_EQ(r.failing_window->k, 1U);
  EXPECT_EQ(r.failing_window->side, WindowSide::Upper);
  const std::string dot = export_dot(g);
  EXPECT_NE(dot.find("\"10,0\""), std::string::npos);
  EXPECT_NE(dot.find("\"2,10\""), std::string::npos);
}

TEST(Graph, EdgeClassification) {
  EXPECT_EQ(classify({2, 3}, {3, 4}), EdgeClass::Diagonal);
  EXPECT_EQ(classify({0, 3}, {0, 4}), EdgeClass::HorizontalFlat);
  EXPECT_EQ(classify({3, 0}, {4, 0}), EdgeClass::VerticalFlat);
  EXPECT_EQ(classify({5, 3}, {0, 4}), EdgeClass::VerticalReset);
  EXPECT_EQ(classify({5, 3}, {6, 0}), EdgeClass::HorizontalReset);
  EXPECT_EQ(classify({5, 3}, {0, 0}), EdgeClass::Other);
}

TEST(Graph, OutEdgesFollowTheRules) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 30);
  const auto g = HofbauerGraph::build(kp, 20);
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (!g.expanded(v)) continue;
    const Vertex s = g.vertices()[v];
    const int x = kp.a[s.j], y = kp.b[s.k];
    const auto out = g.out_edges(v);
    ASSERT_EQ(out.size(), static_cast<std::size_t>(y - x + 1));
    for (const Edge& e : out) {
      Vertex expected;
      if (x == y) expected = {s.j + 1, s.k + 1};
      else if (e.label == x) expected = {s.j + 1, 0};
      else if (e.label == y) expected = {0, s.k + 1};
      else expected = {0, 0};
      EXPECT_EQ(e.target_vertex, expected);
    }
  }
}

TEST(Graph, PathToRootReturnsToRoot) {
  const auto kp = compute_kneading(Parameters::parse("0.5", "3.2"), 40);
  const auto g = HofbauerGraph::build(kp, 25);
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (g.distance(v) > 15 || !g.distance_to_root(v)) continue;
    const Vertex start = g.vertices()[v];
    const Word eta = path_to_root(start, g);
    EXPECT_EQ(eta.size(), *g.distance_to_root(v));
    std::size_t at = v;
    for (Digit x : eta) {
      const Edge* e = g.edge_with_label(at, x);
      ASSERT_NE(e, nullptr);
      ASSERT_FALSE(e->truncated());
      at = e->target;
    }
    EXPECT_EQ(at, g.root());
  }
}

TEST(Graph, NotAPathAndDepthErrors) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 10);
  const auto g = HofbauerGraph::build(kp, 6);
  try {
    pth(Word::parse("000"), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPath);
  }
  EXPECT_THROW(HofbauerGraph::build(kp, 20), Error);
}

TEST(Graph, DotExportParses) {
  const auto kp = compute_kneading(Parameters::parse("0.25", "2.5"), 12);
  const auto g = HofbauerGraph::build(kp, 8);
  const std::string dot = export_dot(g);
  std::regex node_re(R"re(^\s*"(\d+),(\d+)"\s*(\[[^\]]*\])?;\s*$)re");
  std::regex edge_re(R"re(^\s*"(\d+),(\d+)"\s*->\s*"(\d+),(\d+)"\s*\[label="(\d)".*\];\s*$)re");
  std::istringstream in(dot);
  std::string line;
  std::set<std::string> nodes;
  std::size_t edges = 0;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, edge_re)) {
      ++edges;
      EXPECT_TRUE(nodes.count(m[1].str() + "," + m[2].str())) << line;
      const auto t = g.find({static_cast<std::uint32_t>(std::stoul(m[3])), static_cast<std::uint32_t>(std::stoul(m[4]))});
      EXPECT_TRUE(t.has_value()) << line;
    } else if (std::regex_match(line, m, node_re)) {
      nodes.insert(m[1].str() + "," + m[2].str());
    }
  }
  std::size_t kept = 0;
  for (const Edge& e : g.edges()) kept += e.truncated() ? 0 : 1;
  EXPECT_EQ(nodes.size(), g.vertices().size());
  EXPECT_EQ(edges, kept);
}
