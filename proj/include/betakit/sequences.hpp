#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "betakit/coding.hpp"
#include "betakit/graph.hpp"
#include "betakit/word.hpp"
#include "json.hpp"

namespace betakit {

enum class SegmentKind { Flat, Diagonal, Reset };
enum class Axis { Horizontal, Vertical, None };

std::string_view to_string(SegmentKind kind) noexcept;
std::string_view to_string(Axis axis) noexcept;

struct Segment {
  SegmentKind kind = SegmentKind::Flat;
  std::size_t start = 0;  // 1-based position in b
  std::size_t length = 0;
  Axis which = Axis::None;
};

struct BDecomposition {
  std::size_t depth = 0;
  std::vector<Segment> segments;
  /// 1-based positions of b whose edge lies in a flat.
  std::vector<std::size_t> flat_indices;
  /// 1-based positions of b whose edge is a reset, and the diagonal length before each.
  std::vector<std::size_t> reset_indices;
  std::vector<std::size_t> diagonal_lengths;
  std::vector<EdgeClass> classes;
};

/// Splits pth(b_1^depth) into flats, diagonals and resets.
BDecomposition decompose_b(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth);

/// b_1^depth with every flat letter replaced by 1.
Word build_c(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth);

struct DSequence {
  Word d;
  std::vector<Word> blocks;  // one per reset of b_1^depth, in order
  Word eta_word;
  std::size_t l = 0;  // max D(a)
  std::size_t n = 0;  // L + 1 + |eta|
};

/// b_1^depth with each reset replaced by a_{m+1} b_1 ... b_{L+1} eta, truncated to depth symbols.
/// L is read from the D(a) scan at scan_depth.
DSequence build_d(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth, std::size_t scan_depth);

enum class BCase { B1, B2, Undetermined };
std::string_view to_string(BCase c) noexcept;

BCase classify_case(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth);

/// B1: flat letters of b_1^n above 1. B2: resets in b_1^n.
std::size_t edit_counts(const KneadingPair& kp, const HofbauerGraph& g, std::size_t n, BCase which);

struct DichotomyReport {
  std::size_t l = 0;
  std::size_t max_k2_first_half = 0;
  std::size_t max_k2_second_half = 0;
  bool bounded_k2_evidence = false;
  bool b_equals_c_after_l = false;
  bool holds() const { return bounded_k2_evidence || b_equals_c_after_l; }
};

DichotomyReport dichotomy(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth, std::size_t scan_depth);

/// Largest second coordinate along pth(w) from position `from` (1-based) on.
std::size_t max_k2_along(const Word& w, const HofbauerGraph& g, std::size_t from = 1);

nlohmann::json to_json(const BDecomposition& decomposition);

}  // namespace betakit
