#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kbiplex/bigraph.hpp"
#include "kbiplex/biplex.hpp"

namespace kbiplex {

inline constexpr std::size_t kOracleMaxVertices = 24;

/// Maximal k-biplexes of the subgraph induced by (L, R), by exhaustive search
/// over all 2^|L| * 2^|R| vertex pairs. Shares no code with the traversal.
inline std::vector<Biplex> brute_force_mbps_within(const BipartiteGraph& g, const VertexSet& l,
                                                   const VertexSet& r, Tolerance k) {
  require_valid(k);
  if (l.size() + r.size() > kOracleMaxVertices)
    throw std::invalid_argument("oracle is limited to " + std::to_string(kOracleMaxVertices) +
                                " vertices");
  const std::size_t nl = l.size(), nr = r.size();
  // Non-adjacency masks in local positions.
  std::vector<std::uint32_t> miss_l(nl, 0), miss_r(nr, 0);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nr; ++j)
      if (!g.has_edge(l[i], r[j])) {
        miss_l[i] |= 1u << j;
        miss_r[j] |= 1u << i;
      }
  auto ok = [&](std::uint32_t sl, std::uint32_t sr) {
    for (std::size_t i = 0; i < nl; ++i)
      if ((sl >> i & 1u) && std::popcount(miss_l[i] & sr) > static_cast<int>(k.left)) return false;
    for (std::size_t j = 0; j < nr; ++j)
      if ((sr >> j & 1u) && std::popcount(miss_r[j] & sl) > static_cast<int>(k.right)) return false;
    return true;
  };

  std::vector<Biplex> out;
  const std::uint64_t lim_l = std::uint64_t{1} << nl, lim_r = std::uint64_t{1} << nr;
  for (std::uint64_t a = 0; a < lim_l; ++a) {
    const auto sl = static_cast<std::uint32_t>(a);
    for (std::uint64_t b = 0; b < lim_r; ++b) {
      const auto sr = static_cast<std::uint32_t>(b);
      if (!ok(sl, sr)) continue;
      bool maximal = true;
      for (std::size_t i = 0; maximal && i < nl; ++i)
        if (!(sl >> i & 1u) && ok(sl | 1u << i, sr)) maximal = false;
      for (std::size_t j = 0; maximal && j < nr; ++j)
        if (!(sr >> j & 1u) && ok(sl, sr | 1u << j)) maximal = false;
      if (!maximal) continue;
      Biplex h;
      for (std::size_t i = 0; i < nl; ++i)
        if (sl >> i & 1u) h.left.push_back(l[i]);
      for (std::size_t j = 0; j < nr; ++j)
        if (sr >> j & 1u) h.right.push_back(r[j]);
      out.push_back(std::move(h));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every maximal k-biplex of g, sorted.
inline std::vector<Biplex> brute_force_mbps(const BipartiteGraph& g, Tolerance k) {
  VertexSet l(g.num_left()), r(g.num_right());
  for (Index i = 0; i < g.num_left(); ++i) l[i] = i;
  for (Index j = 0; j < g.num_right(); ++j) r[j] = j;
  return brute_force_mbps_within(g, l, r, k);
}

/// Maximal k-biplexes of G[L + v, R] that contain the left vertex v.
inline std::vector<Biplex> brute_force_local(const BipartiteGraph& g, const Biplex& base,
                                             Index anchor, Tolerance k) {
  VertexSet l = base.left;
  l.insert(std::upper_bound(l.begin(), l.end(), anchor), anchor);
  auto all = brute_force_mbps_within(g, l, base.right, k);
  std::erase_if(all, [&](const Biplex& h) {
    return !std::binary_search(h.left.begin(), h.left.end(), anchor);
  });
  return all;
}

/// Number of shared vertices: |L ∩ L'| + |R ∩ R'|.
inline std::size_t similarity(const Biplex& a, const Biplex& b) {
  auto common = [](const VertexSet& x, const VertexSet& y) {
    std::size_t n = 0;
    for (auto i = x.begin(), j = y.begin(); i != x.end() && j != y.end();) {
      if (*i < *j) ++i;
      else if (*j < *i) ++j;
      else { ++n; ++i; ++j; }
    }
    return n;
  };
  return common(a.left, b.left) + common(a.right, b.right);
}

struct PathStep {
  Index anchor = 0;
  Biplex local;     // maximal within G[H_i + anchor], contains the anchor
  Biplex extended;  // H_{i+1}
};

struct PathTrace {
  std::vector<Biplex> solutions;  // H_0 .. H_n
  std::vector<PathStep> steps;    // steps[i] links solutions[i] to solutions[i + 1]
};

namespace detail {

inline bool naive_is_kbiplex(const BipartiteGraph& g, const VertexSet& l, const VertexSet& r,
                             Tolerance k) {
  for (Index v : l) {
    std::size_t m = 0;
    for (Index u : r) m += !g.has_edge(v, u);
    if (m > k.left) return false;
  }
  for (Index u : r) {
    std::size_t m = 0;
    for (Index v : l) m += !g.has_edge(v, u);
    if (m > k.right) return false;
  }
  return true;
}

inline void insert_sorted(VertexSet& s, Index x) {
  s.insert(std::upper_bound(s.begin(), s.end(), x), x);
}

// Adds pool vertices in ascending id order, left pool first, one pass each.
inline Biplex naive_extend(const BipartiteGraph& g, Biplex h, const VertexSet& pool_l,
                           const VertexSet& pool_r, Tolerance k) {
  for (Index v : pool_l) {
    if (std::binary_search(h.left.begin(), h.left.end(), v)) continue;
    VertexSet l = h.left;
    insert_sorted(l, v);
    if (naive_is_kbiplex(g, l, h.right, k)) h.left = std::move(l);
  }
  for (Index u : pool_r) {
    if (std::binary_search(h.right.begin(), h.right.end(), u)) continue;
    VertexSet r = h.right;
    insert_sorted(r, u);
    if (naive_is_kbiplex(g, h.left, r, k)) h.right = std::move(r);
  }
  return h;
}

}  // namespace detail

/// Walks from the initial solution towards `target` using left-anchored links
/// only: each step anchors the smallest vertex of L'' outside L_i, grows
/// ((L'' ∩ L_i) + v, R'') to a local solution within G[H_i + v], and extends
/// that in G.
inline PathTrace construct_left_anchored_path(const BipartiteGraph& g, Tolerance k,
                                              const Biplex& target) {
  if (!detail::naive_is_kbiplex(g, target.left, target.right, k) || !is_maximal(g, target, k))
    throw ContractViolation("path target is not a maximal k-biplex");
  VertexSet all_l(g.num_left()), all_r(g.num_right());
  for (Index i = 0; i < g.num_left(); ++i) all_l[i] = i;
  for (Index j = 0; j < g.num_right(); ++j) all_r[j] = j;

  PathTrace trace;
  trace.solutions.push_back(detail::naive_extend(g, {{}, all_r}, all_l, {}, k));
  // Similarity grows by at least one per step, so the walk is bounded.
  for (std::size_t guard = 0; guard <= g.num_left() + g.num_right(); ++guard) {
    const Biplex& hi = trace.solutions.back();
    VertexSet missing;
    std::set_difference(target.left.begin(), target.left.end(), hi.left.begin(), hi.left.end(),
                        std::back_inserter(missing));
    if (missing.empty()) return trace;
    const Index v = missing.front();
    Biplex seed;
    std::set_intersection(target.left.begin(), target.left.end(), hi.left.begin(), hi.left.end(),
                          std::back_inserter(seed.left));
    detail::insert_sorted(seed.left, v);
    seed.right = target.right;
    PathStep step{v, detail::naive_extend(g, seed, hi.left, hi.right, k), {}};
    step.extended = detail::naive_extend(g, step.local, all_l, all_r, k);
    Biplex next = step.extended;
    trace.steps.push_back(std::move(step));
    trace.solutions.push_back(std::move(next));
  }
  throw std::logic_error("left-anchored path did not reach its target");
}

}  // namespace kbiplex
