#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "kbiplex/core.hpp"
#include "kbiplex/traversal.hpp"

namespace kbiplex {

/// Core thresholds implied by the size constraint: a left member of a large
/// MBP neighbors at least size.right - k.left right members, and vice versa.
inline std::pair<std::size_t, std::size_t> core_thresholds(const SizeConstraint& size,
                                                           Tolerance k) {
  auto sub = [](std::size_t a, std::size_t b) { return a > b ? a - b : std::size_t{0}; };
  return {sub(size.right, k.left), sub(size.left, k.right)};
}

/// MBPs with |L| >= theta_left and |R| >= theta_right, reported with the ids of
/// `g`. cfg.size carries the thresholds and pruning toggles; cfg.mode is
/// forced to Improved.
template <class Sink>
RunStats enumerate_large(const BipartiteGraph& g, RunConfig cfg, bool use_core, Sink&& sink) {
  require_valid(cfg.k);
  if (!cfg.size.active()) throw std::invalid_argument("size thresholds must not both be zero");
  cfg.mode = Mode::Improved;
  const auto [min_left, min_right] = core_thresholds(cfg.size, cfg.k);
  if (!use_core || (min_left == 0 && min_right == 0)) return detail::run_traversal(g, cfg, sink);
  const CoreResult core = theta_core(g, min_left, min_right);
  return detail::run_traversal(core.graph, cfg, sink, &core.left_origin, &core.right_origin);
}

/// Symmetric threshold with every pruning and the core preprocessing enabled.
template <class Sink>
RunStats enumerate_large(const BipartiteGraph& g, Tolerance k, std::size_t theta, RunConfig cfg,
                         Sink&& sink) {
  if (theta < 1) throw std::invalid_argument("theta must be at least 1");
  cfg.k = k;
  cfg.size.left = cfg.size.right = theta;
  return enumerate_large(g, std::move(cfg), true, sink);
}

}  // namespace kbiplex
