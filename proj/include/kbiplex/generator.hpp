#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "kbiplex/bigraph.hpp"

namespace kbiplex {

/// Edge count for a target density |E| / (|L| + |R|).
inline std::uint64_t er_edge_count(Index n_left, Index n_right, double density) {
  if (!(density >= 0.0) || !std::isfinite(density))
    throw std::invalid_argument("density must be a finite non-negative number");
  return static_cast<std::uint64_t>(
      std::llround(density * (static_cast<double>(n_left) + static_cast<double>(n_right))));
}

/// Uniform random bipartite graph with exactly round(density * (nl + nr))
/// distinct edges. Deterministic for a fixed seed.
inline BipartiteGraph gen_er(Index n_left, Index n_right, double density, std::uint64_t seed) {
  const std::uint64_t m = er_edge_count(n_left, n_right, density);
  const std::uint64_t universe = static_cast<std::uint64_t>(n_left) * n_right;
  if (m > universe)
    throw std::invalid_argument("density too high: " + std::to_string(m) + " edges requested, " +
                                std::to_string(universe) + " possible");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, universe == 0 ? 0 : universe - 1);

  // Sample the smaller of the edge set and its complement by rejection.
  const bool sample_complement = m > universe / 2;
  const std::uint64_t target = sample_complement ? universe - m : m;
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(target) * 2);
  while (chosen.size() < target) chosen.insert(pick(rng));

  std::vector<BipartiteGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  auto decode = [n_right](std::uint64_t code) {
    return BipartiteGraph::Edge{static_cast<Index>(code / n_right),
                                static_cast<Index>(code % n_right)};
  };
  if (sample_complement) {
    for (std::uint64_t code = 0; code < universe; ++code)
      if (!chosen.contains(code)) edges.push_back(decode(code));
  } else {
    for (std::uint64_t code : chosen) edges.push_back(decode(code));
  }
  return BipartiteGraph(n_left, n_right, std::move(edges));
}

}  // namespace kbiplex
