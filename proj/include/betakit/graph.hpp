#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "betakit/coding.hpp"
#include "betakit/word.hpp"
#include "json.hpp"

namespace betakit {

struct Vertex {
  std::uint32_t j = 0;
  std::uint32_t k = 0;

  std::string name() const { return std::to_string(j) + "," + std::to_string(k); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class EdgeKind { FollowBoth, FollowA, FollowB, Reset, Root };
enum class EdgeClass { HorizontalFlat, VerticalFlat, Diagonal, HorizontalReset, VerticalReset, Other };

std::string_view to_string(EdgeKind kind) noexcept;
std::string_view to_string(EdgeClass cls) noexcept;

inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::size_t source = 0;
  /// kNoVertex when the target lies beyond the truncation depth.
  std::size_t target = kNoVertex;
  Vertex source_vertex;
  Vertex target_vertex;
  Digit label = 0;
  EdgeKind kind = EdgeKind::Root;
  EdgeClass classification = EdgeClass::Other;

  bool truncated() const noexcept { return target == kNoVertex; }
};

/// Class of an edge from its endpoints alone.
EdgeClass classify(const Vertex& source, const Vertex& target);

/// The graph restricted to vertices within `depth` edges of the root.
class HofbauerGraph {
 public:
  static HofbauerGraph build(const KneadingPair& kp, std::size_t depth);

  const KneadingPair& kneading() const noexcept { return kneading_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t root() const noexcept { return 0; }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Out-edges of vertex v ordered by label.
  std::span<const Edge> out_edges(std::size_t v) const;
  std::optional<std::size_t> find(const Vertex& v) const;
  std::size_t index_of(const Vertex& v) const;
  /// BFS distance from the root.
  std::size_t distance(std::size_t v) const { return distance_[v]; }
  /// Whether the vertex's out-edges were generated (kneading digits available).
  bool expanded(std::size_t v) const { return expanded_[v]; }
  /// Length of the shortest path to the root inside the truncation, if any.
  std::optional<std::size_t> distance_to_root(std::size_t v) const;
  const Edge* edge_with_label(std::size_t v, Digit label) const;

 private:
  KneadingPair kneading_;
  std::size_t depth_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> distance_;
  std::vector<bool> expanded_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> first_edge_;  // CSR offsets, size |V| + 1
  std::vector<std::size_t> to_root_;
  std::map<Vertex, std::size_t> index_;
};

/// Label-following path from the root; throws NotAPath if w leaves the graph.
std::vector<Edge> pth(const Word& w, const HofbauerGraph& g);
Vertex vtx(const Word& w, const HofbauerGraph& g);

std::vector<EdgeClass> classify_edges(const HofbauerGraph& g);

/// Shortest word labelling a path from v to the root, smallest labels first on ties.
Word path_to_root(const Vertex& v, const HofbauerGraph& g);

std::string export_dot(const HofbauerGraph& g);
nlohmann::json to_json(const HofbauerGraph& g);

}  // namespace betakit
