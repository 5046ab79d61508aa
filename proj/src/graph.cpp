#include "betakit/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "betakit/error.hpp"

namespace betakit {

std::string_view to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case EdgeKind::FollowBoth: return "FollowBoth";
    case EdgeKind::FollowA: return "FollowA";
    case EdgeKind::FollowB: return "FollowB";
    case EdgeKind::Reset: return "Reset";
    case EdgeKind::Root: return "Root";
  }
  return "Root";
}

std::string_view to_string(EdgeClass cls) noexcept {
  switch (cls) {
    case EdgeClass::HorizontalFlat: return "HorizontalFlat";
    case EdgeClass::VerticalFlat: return "VerticalFlat";
    case EdgeClass::Diagonal: return "Diagonal";
    case EdgeClass::HorizontalReset: return "HorizontalReset";
    case EdgeClass::VerticalReset: return "VerticalReset";
    case EdgeClass::Other: return "Other";
  }
  return "Other";
}

EdgeClass classify(const Vertex& s, const Vertex& t) {
  if (t.j == s.j + 1 && t.k == s.k + 1) return EdgeClass::Diagonal;
  if (s.j == 0 && t.j == 0 && t.k == s.k + 1) return EdgeClass::HorizontalFlat;
  if (s.k == 0 && t.k == 0 && t.j == s.j + 1) return EdgeClass::VerticalFlat;
  if (t.j == 0 && t.k == s.k + 1) return EdgeClass::VerticalReset;
  if (t.k == 0 && t.j == s.j + 1) return EdgeClass::HorizontalReset;
  return EdgeClass::Other;
}

namespace {

struct Candidate {
  Digit label;
  Vertex target;
  EdgeKind kind;
};

bool can_expand(const Vertex& v, const KneadingPair& kp) {
  return v.j < kp.certified_len && v.k < kp.certified_len;
}

// Out-edges of (j, k) in label order.
std::vector<Candidate> successors(const Vertex& v, const KneadingPair& kp) {
  const Digit x = kp.a[v.j];
  const Digit y = kp.b[v.k];
  const bool at_root = v.j == 0 && v.k == 0;
  std::vector<Candidate> out;
  if (x == y) {
    out.push_back({x, {v.j + 1, v.k + 1}, EdgeKind::FollowBoth});
    return out;
  }
  if (x > y)
    throw Error(ErrorCode::PreconditionViolated,
                "kneading data inconsistent at vertex " + v.name() + ": a digit exceeds b digit");
  out.push_back({x, {v.j + 1, 0}, at_root ? EdgeKind::Root : EdgeKind::FollowA});
  for (int c = x + 1; c < y; ++c) out.push_back({static_cast<Digit>(c), {0, 0}, at_root ? EdgeKind::Root : EdgeKind::Reset});
  out.push_back({y, {0, v.k + 1}, at_root ? EdgeKind::Root : EdgeKind::FollowB});
  return out;
}

}  // namespace

HofbauerGraph HofbauerGraph::build(const KneadingPair& kp, std::size_t depth) {
  kp.require_depth(std::max<std::size_t>(depth, 1), "graph construction");
  HofbauerGraph g;
  g.kneading_ = kp;
  g.depth_ = depth;
  auto& index = g.index_;
  index.emplace(Vertex{}, 0);
  g.vertices_.push_back(Vertex{});
  g.distance_.push_back(0);
  for (std::size_t head = 0; head < g.vertices_.size(); ++head) {
    const Vertex v = g.vertices_[head];
    if (g.distance_[head] >= depth || !can_expand(v, kp)) continue;
    for (const Candidate& c : successors(v, kp)) {
      if (index.emplace(c.target, g.vertices_.size()).second) {
        g.vertices_.push_back(c.target);
        g.distance_.push_back(g.distance_[head] + 1);
      }
    }
  }
  const std::size_t n = g.vertices_.size();
  g.expanded_.assign(n, false);
  g.first_edge_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.first_edge_[v] = g.edges_.size();
    const Vertex source = g.vertices_[v];
    if (!can_expand(source, kp)) continue;
    g.expanded_[v] = true;
    for (const Candidate& c : successors(source, kp)) {
      Edge e;
      e.source = v;
      const auto it = index.find(c.target);
      e.target = it == index.end() ? kNoVertex : it->second;
      e.source_vertex = source;
      e.target_vertex = c.target;
      e.label = c.label;
      e.kind = c.kind;
      e.classification = classify(source, c.target);
      g.edges_.push_back(e);
    }
  }
  g.first_edge_[n] = g.edges_.size();

  // Reverse BFS from the root for path_to_root queries.
  constexpr std::size_t unreached = kNoVertex;
  std::vector<std::vector<std::size_t>> incoming(n);
  for (const Edge& e : g.edges_) {
    if (!e.truncated()) incoming[e.target].push_back(e.source);
  }
  g.to_root_.assign(n, unreached);
  g.to_root_[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : incoming[v]) {
      if (g.to_root_[u] == unreached) {
        g.to_root_[u] = g.to_root_[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return g;
}

std::span<const Edge> HofbauerGraph::out_edges(std::size_t v) const {
  return std::span<const Edge>(edges_).subspan(first_edge_[v], first_edge_[v + 1] - first_edge_[v]);
}

std::optional<std::size_t> HofbauerGraph::find(const Vertex& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HofbauerGraph::index_of(const Vertex& v) const {
  const auto found = find(v);
  if (!found) throw Error(ErrorCode::NotFoundWithinDepth, "vertex <" + v.name() + "> is not in the truncated graph");
  return *found;
}

std::optional<std::size_t> HofbauerGraph::distance_to_root(std::size_t v) const {
  if (to_root_[v] == kNoVertex) return std::nullopt;
  return to_root_[v];
}

const Edge* HofbauerGraph::edge_with_label(std::size_t v, Digit label) const {
  for (const Edge& e : out_edges(v)) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

std::vector<Edge> pth(const Word& w, const HofbauerGraph& g) {
  std::vector<Edge> path;
  path.reserve(w.size());
  std::size_t v = g.root();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!g.expanded(v))
      throw Error(ErrorCode::InsufficientKneadingDepth,
                  "path leaves the expanded part of the graph at symbol " + std::to_string(i + 1));
    const Edge* e = g.edge_with_label(v, w[i]);
    if (e == nullptr)
      throw Error(ErrorCode::NotAPath, "no edge labelled " + std::to_string(w[i]) + " at <" + g.vertices()[v].name() +
                                           "> (symbol " + std::to_string(i + 1) + ")");
    path.push_back(*e);
    if (e->truncated() && i + 1 < w.size())
      throw Error(ErrorCode::InsufficientKneadingDepth, "path leaves the truncated graph at symbol " + std::to_string(i + 1));
    v = e->target;
  }
  return path;
}

Vertex vtx(const Word& w, const HofbauerGraph& g) {
  const auto path = pth(w, g);
  return path.empty() ? Vertex{} : path.back().target_vertex;
}

std::vector<EdgeClass> classify_edges(const HofbauerGraph& g) {
  std::vector<EdgeClass> out;
  out.reserve(g.edges().size());
  for (const Edge& e : g.edges()) out.push_back(e.classification);
  return out;
}

Word path_to_root(const Vertex& v, const HofbauerGraph& g) {
  if (!g.kneading().beta_above_two)
    throw Error(ErrorCode::PreconditionViolated, "paths to the root are only guaranteed for beta > 2");
  std::size_t current = g.index_of(v);
  const auto length = g.distance_to_root(current);
  if (!length)
    throw Error(ErrorCode::NotFoundWithinDepth,
                "no path from <" + v.name() + "> to <0,0> inside depth " + std::to_string(g.depth()));
  Word out;
  out.reserve(*length);
  while (current != g.root()) {
    const std::size_t remaining = *g.distance_to_root(current);
    for (const Edge& e : g.out_edges(current)) {
      if (!e.truncated() && g.distance_to_root(e.target) == remaining - 1) {
        out.push_back(e.label);
        current = e.target;
        break;
      }
    }
  }
  return out;
}

namespace {
std::string_view colour(EdgeClass cls) {
  switch (cls) {
    case EdgeClass::HorizontalFlat: return "blue";
    case EdgeClass::VerticalFlat: return "darkgreen";
    case EdgeClass::Diagonal: return "red";
    case EdgeClass::HorizontalReset: return "orange";
    case EdgeClass::VerticalReset: return "purple";
    case EdgeClass::Other: return "gray40";
  }
  return "black";
}
}  // namespace

std::string export_dot(const HofbauerGraph& g) {
  std::ostringstream out;
  out << "digraph hofbauer {\n";
  out << "  node [shape=box];\n";
  for (const Vertex& v : g.vertices()) out << "  \"" << v.name() << "\";\n";
  for (const Edge& e : g.edges()) {
    if (e.truncated()) continue;
    out << "  \"" << e.source_vertex.name() << "\" -> \"" << e.target_vertex.name() << "\" [label=\""
        << static_cast<int>(e.label) << "\", color=" << colour(e.classification) << "];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const HofbauerGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const Vertex& x = g.vertices()[v];
    vertices.push_back({{"j", x.j}, {"k", x.k}, {"distance", g.distance(v)}, {"expanded", g.expanded(v)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"source", e.source_vertex.name()},
                     {"target", e.target_vertex.name()},
                     {"label", e.label},
                     {"kind", to_string(e.kind)},
                     {"classification", to_string(e.classification)},
                     {"truncated", e.truncated()}});
  }
  return {{"depth", g.depth()}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}  // namespace betakit
