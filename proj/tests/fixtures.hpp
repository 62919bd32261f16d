#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <random>

#include "kbiplex/biplex.hpp"
#include "kbiplex/edge_list.hpp"
#include "kbiplex/generator.hpp"

namespace kbiplex::testing {

/// G1: left {a, b}, right {x, y, z}, edges (a,x) and (b,z); y is isolated.
inline BipartiteGraph g1() {
  return load_edge_list(std::string_view("a x\nb z\n- y\n"), EdgeListFormat::Plain);
}

/// Builds a biplex from labels, e.g. bp(g, {"a", "b"}, {"x", "z"}).
inline Biplex bp(const BipartiteGraph& g, std::initializer_list<std::string> l,
                 std::initializer_list<std::string> r) {
  const LabelIndex idx(g);
  VertexSet ls, rs;
  for (const auto& s : l) ls.push_back(idx.find(Side::Left, s));
  for (const auto& s : r) rs.push_back(idx.find(Side::Right, s));
  return make_biplex(std::move(ls), std::move(rs));
}

inline VertexSet ids(const BipartiteGraph& g, Side side, std::initializer_list<std::string> names) {
  const LabelIndex idx(g);
  VertexSet out;
  for (const auto& s : names) out.push_back(idx.find(side, s));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Biplex> sorted(std::vector<Biplex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Uniform graph with sides in [1, max_left] x [1, max_right] and an edge
/// count uniform in [0, |L| |R|].
inline BipartiteGraph random_graph(std::mt19937_64& rng, Index max_left, Index max_right) {
  const Index nl = 1 + static_cast<Index>(rng() % max_left);
  const Index nr = 1 + static_cast<Index>(rng() % max_right);
  const auto m = rng() % (std::uint64_t{nl} * nr + 1);
  return gen_er(nl, nr, static_cast<double>(m) / (nl + nr), rng());
}

/// The four maximal 1-biplexes of G1.
inline std::vector<Biplex> g1_k1(const BipartiteGraph& g) {
  return sorted({bp(g, {}, {"x", "y", "z"}), bp(g, {"a"}, {"x", "y"}), bp(g, {"b"}, {"y", "z"}),
                 bp(g, {"a", "b"}, {"x", "z"})});
}

}  // namespace kbiplex::testing
