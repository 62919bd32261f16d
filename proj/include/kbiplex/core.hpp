#pragma once

#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

#include "kbiplex/bigraph.hpp"

namespace kbiplex {

/// A peeled subgraph together with the map from its ids to the input's ids.
struct CoreResult {
  BipartiteGraph graph;
  std::vector<Index> left_origin;   // core left id -> input left id
  std::vector<Index> right_origin;  // core right id -> input right id
};

/// Maximal induced subgraph in which every left vertex has degree >= min_left
/// and every right vertex has degree >= min_right.
inline CoreResult theta_core(const BipartiteGraph& g, std::size_t min_left, std::size_t min_right) {
  const Index nl = g.num_left();
  const Index nr = g.num_right();
  std::vector<std::size_t> deg_l(nl), deg_r(nr);
  std::vector<char> gone_l(nl, 0), gone_r(nr, 0);
  // Queue entries are (side, id); a vertex is enqueued once, when it first
  // drops below its threshold.
  std::queue<VertexId> q;
  for (Index l = 0; l < nl; ++l) {
    deg_l[l] = g.degree(Side::Left, l);
    if (deg_l[l] < min_left) {
      gone_l[l] = 1;
      q.push({Side::Left, l});
    }
  }
  for (Index r = 0; r < nr; ++r) {
    deg_r[r] = g.degree(Side::Right, r);
    if (deg_r[r] < min_right) {
      gone_r[r] = 1;
      q.push({Side::Right, r});
    }
  }
  while (!q.empty()) {
    const VertexId w = q.front();
    q.pop();
    for (Index x : g.neighbors(w)) {
      if (w.side == Side::Left) {
        if (!gone_r[x] && --deg_r[x] < min_right) {
          gone_r[x] = 1;
          q.push({Side::Right, x});
        }
      } else {
        if (!gone_l[x] && --deg_l[x] < min_left) {
          gone_l[x] = 1;
          q.push({Side::Left, x});
        }
      }
    }
  }

  CoreResult res;
  std::vector<Index> new_l(nl, 0), new_r(nr, 0);
  for (Index l = 0; l < nl; ++l)
    if (!gone_l[l]) {
      new_l[l] = static_cast<Index>(res.left_origin.size());
      res.left_origin.push_back(l);
    }
  for (Index r = 0; r < nr; ++r)
    if (!gone_r[r]) {
      new_r[r] = static_cast<Index>(res.right_origin.size());
      res.right_origin.push_back(r);
    }
  std::vector<BipartiteGraph::Edge> edges;
  for (Index l : res.left_origin)
    for (Index r : g.neighbors(Side::Left, l))
      if (!gone_r[r]) edges.emplace_back(new_l[l], new_r[r]);
  std::vector<std::string> ll, rl;
  if (g.has_labels(Side::Left))
    for (Index l : res.left_origin) ll.push_back(g.label(Side::Left, l));
  if (g.has_labels(Side::Right))
    for (Index r : res.right_origin) rl.push_back(g.label(Side::Right, r));
  res.graph = BipartiteGraph(static_cast<Index>(res.left_origin.size()),
                             static_cast<Index>(res.right_origin.size()), std::move(edges),
                             std::move(ll), std::move(rl));
  return res;
}

inline CoreResult theta_core(const BipartiteGraph& g, std::size_t min_degree) {
  return theta_core(g, min_degree, min_degree);
}

}  // namespace kbiplex
