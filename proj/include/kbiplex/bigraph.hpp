#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kbiplex {

using Index = std::uint32_t;

/// Sorted, duplicate-free list of dense vertex indices from one side.
using VertexSet = std::vector<Index>;

enum class Side : std::uint8_t { Left, Right };

constexpr Side opposite(Side s) noexcept { return s == Side::Left ? Side::Right : Side::Left; }

struct VertexId {
  Side side;
  Index index;

  friend constexpr bool operator==(VertexId, VertexId) = default;
};

/// Raised when a documented precondition is broken by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable bipartite graph with sorted per-side adjacency.
///
/// Vertex ids are dense and 0-based per side. Labels are optional; when absent,
/// `label()` falls back to a side-prefixed index such as "L3" or "R7".
class BipartiteGraph {
 public:
  using Edge = std::pair<Index, Index>;

  BipartiteGraph() = default;

  /// Builds the graph from (left, right) pairs. Duplicate pairs are collapsed.
  BipartiteGraph(Index n_left, Index n_right, std::vector<Edge> edges,
                 std::vector<std::string> left_labels = {},
                 std::vector<std::string> right_labels = {})
      : adj_left_(n_left), adj_right_(n_right),
        labels_left_(std::move(left_labels)), labels_right_(std::move(right_labels)) {
    if (!labels_left_.empty() && labels_left_.size() != n_left)
      throw std::invalid_argument("left label count does not match vertex count");
    if (!labels_right_.empty() && labels_right_.size() != n_right)
      throw std::invalid_argument("right label count does not match vertex count");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [l, r] : edges) {
      if (l >= n_left || r >= n_right) throw std::out_of_range("edge endpoint out of range");
      adj_left_[l].push_back(r);
      adj_right_[r].push_back(l);
    }
    // Edges were sorted by (l, r), so left lists are sorted; right lists receive
    // l in ascending order as well.
    num_edges_ = edges.size();
  }

  Index num_left() const noexcept { return static_cast<Index>(adj_left_.size()); }
  Index num_right() const noexcept { return static_cast<Index>(adj_right_.size()); }
  Index num_vertices(Side s) const noexcept { return s == Side::Left ? num_left() : num_right(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const Index> neighbors(Side s, Index i) const {
    const auto& adj = s == Side::Left ? adj_left_ : adj_right_;
    return adj.at(i);
  }
  std::span<const Index> neighbors(VertexId w) const { return neighbors(w.side, w.index); }

  std::size_t degree(Side s, Index i) const { return neighbors(s, i).size(); }

  bool has_edge(Index left, Index right) const {
    const auto& a = adj_left_[left];
    const auto& b = adj_right_[right];
    if (a.size() <= b.size()) return std::binary_search(a.begin(), a.end(), right);
    return std::binary_search(b.begin(), b.end(), left);
  }

  /// Adjacency test between `i` on side `s` and `j` on the opposite side.
  bool adjacent(Side s, Index i, Index j) const {
    return s == Side::Left ? has_edge(i, j) : has_edge(j, i);
  }

  bool has_labels(Side s) const noexcept {
    return !(s == Side::Left ? labels_left_ : labels_right_).empty();
  }

  std::string label(Side s, Index i) const {
    const auto& labels = s == Side::Left ? labels_left_ : labels_right_;
    if (!labels.empty()) return labels.at(i);
    return (s == Side::Left ? "L" : "R") + std::to_string(i);
  }

  const std::vector<std::string>& labels(Side s) const noexcept {
    return s == Side::Left ? labels_left_ : labels_right_;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Index l = 0; l < num_left(); ++l)
      for (Index r : adj_left_[l]) out.emplace_back(l, r);
    return out;
  }

  /// Swaps the roles of the two sides.
  BipartiteGraph transposed() const {
    BipartiteGraph t;
    t.adj_left_ = adj_right_;
    t.adj_right_ = adj_left_;
    t.labels_left_ = labels_right_;
    t.labels_right_ = labels_left_;
    t.num_edges_ = num_edges_;
    return t;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.adj_left_ == b.adj_left_ && a.adj_right_ == b.adj_right_;
  }

 private:
  std::vector<VertexSet> adj_left_;
  std::vector<VertexSet> adj_right_;
  std::vector<std::string> labels_left_;
  std::vector<std::string> labels_right_;
  std::size_t num_edges_ = 0;
};

namespace detail {

inline void require_opposite_set(const BipartiteGraph& g, VertexId w, std::span<const Index> s) {
  if (w.index >= g.num_vertices(w.side)) throw ContractViolation("vertex id out of range");
  const Index bound = g.num_vertices(opposite(w.side));
  for (Index x : s)
    if (x >= bound) throw ContractViolation("set contains an id outside the opposite side");
}

}  // namespace detail

/// Neighbors of `w` inside `s`, where `s` is a sorted set from the opposite side.
inline VertexSet gamma(const BipartiteGraph& g, VertexId w, std::span<const Index> s) {
  detail::require_opposite_set(g, w, s);
  auto adj = g.neighbors(w);
  VertexSet out;
  std::set_intersection(adj.begin(), adj.end(), s.begin(), s.end(), std::back_inserter(out));
  return out;
}

inline std::size_t delta(const BipartiteGraph& g, VertexId w, std::span<const Index> s) {
  return gamma(g, w, s).size();
}

/// Number of vertices of `s` that `w` is not adjacent to.
inline std::size_t bar_delta(const BipartiteGraph& g, VertexId w, std::span<const Index> s) {
  return s.size() - delta(g, w, s);
}

}  // namespace kbiplex
