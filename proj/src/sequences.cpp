#include "betakit/sequences.hpp"

#include <algorithm>

#include "betakit/error.hpp"
#include "betakit/specification.hpp"

namespace betakit {

std::string_view to_string(SegmentKind kind) noexcept {
  switch (kind) {
    case SegmentKind::Flat: return "Flat";
    case SegmentKind::Diagonal: return "Diagonal";
    case SegmentKind::Reset: return "Reset";
  }
  return "Reset";
}

std::string_view to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::Horizontal: return "horizontal";
    case Axis::Vertical: return "vertical";
    case Axis::None: return "none";
  }
  return "none";
}

std::string_view to_string(BCase c) noexcept {
  switch (c) {
    case BCase::B1: return "B1";
    case BCase::B2: return "B2";
    case BCase::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

namespace {

std::pair<SegmentKind, Axis> segment_of(EdgeClass cls) {
  switch (cls) {
    case EdgeClass::HorizontalFlat: return {SegmentKind::Flat, Axis::Horizontal};
    case EdgeClass::VerticalFlat: return {SegmentKind::Flat, Axis::Vertical};
    case EdgeClass::Diagonal: return {SegmentKind::Diagonal, Axis::None};
    case EdgeClass::VerticalReset: return {SegmentKind::Reset, Axis::Vertical};
    case EdgeClass::HorizontalReset: return {SegmentKind::Reset, Axis::Horizontal};
    case EdgeClass::Other: break;
  }
  return {SegmentKind::Reset, Axis::None};
}

}  // namespace

BDecomposition decompose_b(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth) {
  if (g.depth() < depth)
    throw Error(ErrorCode::InsufficientKneadingDepth,
                "graph depth " + std::to_string(g.depth()) + " is below the requested " + std::to_string(depth));
  kp.require_depth(depth, "b decomposition");
  const auto path = pth(kp.b.prefix(depth), g);
  BDecomposition out;
  out.depth = depth;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Edge& e = path[i];
    const std::size_t position = i + 1;
    out.classes.push_back(e.classification);
    const auto [kind, axis] = segment_of(e.classification);
    if (kind == SegmentKind::Flat) out.flat_indices.push_back(position);
    if (kind == SegmentKind::Reset) {
      out.reset_indices.push_back(position);
      out.diagonal_lengths.push_back(e.source_vertex.j);
    }
    // Resets are single edges; consecutive ones stay separate segments.
    if (!out.segments.empty() && kind != SegmentKind::Reset && out.segments.back().kind == kind &&
        out.segments.back().which == axis) {
      ++out.segments.back().length;
    } else {
      out.segments.push_back({kind, position, 1, axis});
    }
  }
  return out;
}

Word build_c(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth) {
  const BDecomposition decomposition = decompose_b(kp, g, depth);
  Word c = kp.b.prefix(depth);
  for (std::size_t position : decomposition.flat_indices) c[position - 1] = 1;
  return c;
}

DSequence build_d(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth, std::size_t scan_depth) {
  const DSetReport half = d_set(kp, DSetKind::Da, std::max<std::size_t>(scan_depth / 2, 1));
  const DSetReport full = d_set(kp, DSetKind::Da, scan_depth);
  if (full.max_found > half.max_found)
    throw Error(ErrorCode::UnboundedDaEvidence, "max D(a) grew from " + std::to_string(half.max_found) + " to " +
                                                    std::to_string(full.max_found) + " over the second half of the scan");
  const BDecomposition decomposition = decompose_b(kp, g, depth);
  DSequence out;
  out.l = full.max_found;
  const Word head = kp.b.prefix(out.l + 1);
  out.eta_word = path_to_root(vtx(head, g), g);
  out.n = out.l + 1 + out.eta_word.size();

  std::size_t next_reset = 0;
  Word d;
  d.reserve(depth + out.n);
  for (std::size_t position = 1; position <= depth && d.size() < depth; ++position) {
    if (next_reset < decomposition.reset_indices.size() && decomposition.reset_indices[next_reset] == position) {
      const std::size_t m = decomposition.diagonal_lengths[next_reset];
      kp.require_depth(m + 1, "reset block");
      Word block{kp.a[m]};
      block.append(head);
      block.append(out.eta_word);
      d.append(block);
      out.blocks.push_back(std::move(block));
      ++next_reset;
    } else {
      d.push_back(kp.b[position - 1]);
    }
  }
  d.truncate(depth);
  out.d = std::move(d);
  return out;
}

BCase classify_case(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth) {
  const BDecomposition decomposition = decompose_b(kp, g, depth);
  std::size_t last = 0;
  for (std::size_t position : decomposition.flat_indices) {
    if (kp.b[position - 1] != 1) last = position;
  }
  if (4 * last > 3 * depth) return BCase::B1;
  if (2 * last <= depth) return BCase::B2;
  return BCase::Undetermined;
}

std::size_t edit_counts(const KneadingPair& kp, const HofbauerGraph& g, std::size_t n, BCase which) {
  const BDecomposition decomposition = decompose_b(kp, g, n);
  if (which == BCase::B2) return decomposition.reset_indices.size();
  if (which == BCase::B1) {
    return static_cast<std::size_t>(std::count_if(decomposition.flat_indices.begin(), decomposition.flat_indices.end(),
                                                  [&](std::size_t p) { return kp.b[p - 1] > 1; }));
  }
  throw Error(ErrorCode::InvalidArgument, "edit counts need case B1 or B2");
}

std::size_t max_k2_along(const Word& w, const HofbauerGraph& g, std::size_t from) {
  std::size_t best = 0;
  const auto path = pth(w, g);
  for (std::size_t i = from == 0 ? 0 : from - 1; i < path.size(); ++i) best = std::max<std::size_t>(best, path[i].target_vertex.k);
  return best;
}

DichotomyReport dichotomy(const KneadingPair& kp, const HofbauerGraph& g, std::size_t depth, std::size_t scan_depth) {
  DichotomyReport out;
  out.l = d_set(kp, DSetKind::Da, scan_depth).max_found;
  const Word c = build_c(kp, g, depth);
  const auto path = pth(c, g);
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto& slot = 2 * (i + 1) <= depth ? out.max_k2_first_half : out.max_k2_second_half;
    slot = std::max<std::size_t>(slot, path[i].target_vertex.k);
  }
  out.bounded_k2_evidence = out.max_k2_second_half <= out.max_k2_first_half;
  out.b_equals_c_after_l = true;
  for (std::size_t i = out.l + 1; i < depth; ++i) {
    if (kp.b[i] != c[i]) out.b_equals_c_after_l = false;
  }
  return out;
}

nlohmann::json to_json(const BDecomposition& decomposition) {
  nlohmann::json segments = nlohmann::json::array();
  for (const Segment& s : decomposition.segments) {
    segments.push_back({{"kind", to_string(s.kind)}, {"start", s.start}, {"length", s.length}, {"which", to_string(s.which)}});
  }
  return {{"depth", decomposition.depth},
          {"segments", std::move(segments)},
          {"flat_indices", decomposition.flat_indices},
          {"reset_indices", decomposition.reset_indices},
          {"diagonal_lengths", decomposition.diagonal_lengths}};
}

}  // namespace betakit
