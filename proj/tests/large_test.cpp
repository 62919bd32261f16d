#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "kbiplex/large.hpp"
#include "kbiplex/oracle.hpp"
#include "kbiplex/verify.hpp"

namespace kbiplex {
namespace {

using testing::bp;
using testing::g1;
using testing::sorted;

std::vector<Biplex> large(const BipartiteGraph& g, Tolerance k, std::size_t theta,
                          RunConfig cfg = {}, RunStats* st = nullptr) {
  std::vector<Biplex> out;
  const auto s = enumerate_large(g, k, theta, std::move(cfg),
                                 [&](const Biplex& h, std::size_t) { out.push_back(h); });
  if (st) *st = s;
  return sorted(std::move(out));
}

std::vector<Biplex> filtered(const BipartiteGraph& g, Tolerance k, const SizeConstraint& size) {
  auto all = brute_force_mbps(g, k);
  std::erase_if(all, [&](const Biplex& h) { return !size.admits(h); });
  return all;
}

TEST(Large, G1ThresholdTwo) {
  const auto g = g1();
  EXPECT_EQ(large(g, 1, 2), std::vector<Biplex>{bp(g, {"a", "b"}, {"x", "z"})});
}

TEST(Large, G1ThresholdOneDropsEmptyLeft) {
  const auto g = g1();
  EXPECT_EQ(large(g, 1, 1), sorted({bp(g, {"a"}, {"x", "y"}), bp(g, {"b"}, {"y", "z"}),
                                    bp(g, {"a", "b"}, {"x", "z"})}));
}

TEST(Large, G1ThresholdThreeIsEmpty) { EXPECT_TRUE(large(g1(), 1, 3).empty()); }

TEST(Large, RejectsInactiveSizes) {
  const auto g = g1();
  auto noop = [](const Biplex&, std::size_t) {};
  EXPECT_THROW(enumerate_large(g, 1, 0, RunConfig{}, noop), std::invalid_argument);
  EXPECT_THROW(enumerate_large(g, RunConfig{}, true, noop), std::invalid_argument);
}

TEST(Large, CoreThresholds) {
  SizeConstraint s;
  s.left = 4;
  s.right = 3;
  EXPECT_EQ(core_thresholds(s, Tolerance{1, 2}), (std::pair<std::size_t, std::size_t>{2, 2}));
  EXPECT_EQ(core_thresholds(s, Tolerance{5, 5}), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Large, MatchesFilteredOracle) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const auto g = testing::random_graph(rng, 7, 7);
    const Index k = 1 + rng() % 3;
    for (std::size_t theta = 1; theta <= 4; ++theta) {
      SizeConstraint s;
      s.left = s.right = theta;
      EXPECT_EQ(large(g, k, theta), filtered(g, k, s)) << "theta " << theta << " k " << k;
    }
  }
}

TEST(Large, AsymmetricThresholdsAndBothAnchors) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 120; ++t) {
    const auto g = testing::random_graph(rng, 7, 7);
    const Tolerance k{static_cast<Index>(1 + rng() % 2), static_cast<Index>(1 + rng() % 3)};
    RunConfig c;
    c.k = k;
    c.size.left = rng() % 4;
    c.size.right = 1 + rng() % 4;
    c.anchor_side = rng() % 2 ? Side::Left : Side::Right;
    c.exclusion = rng() % 2;
    std::vector<Biplex> got;
    enumerate_large(g, c, rng() % 2, [&](const Biplex& h, std::size_t) { got.push_back(h); });
    EXPECT_EQ(sorted(got), filtered(g, k, c.size)) << config_label(c);
  }
}

TEST(Large, EveryPruningCombinationIsExact) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 80; ++t) {
    const auto g = testing::random_graph(rng, 6, 6);
    const Index k = 1 + rng() % 2;
    const std::size_t theta = 1 + rng() % 3;
    for (unsigned mask = 0; mask < 32; ++mask) {
      RunConfig c;
      c.k = k;
      c.size.left = c.size.right = theta;
      c.size.prune_anchor = mask & 1;
      c.size.prune_local = mask & 2;
      c.size.prune_solution = mask & 4;
      c.size.prune_left = mask & 8;
      std::vector<Biplex> got;
      enumerate_large(g, c, mask & 16, [&](const Biplex& h, std::size_t) { got.push_back(h); });
      EXPECT_EQ(sorted(got), filtered(g, k, c.size)) << "mask " << mask;
    }
  }
}

TEST(Large, PruningNeverAddsCalls) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 150; ++t) {
    const auto g = testing::random_graph(rng, 7, 7);
    const Index k = 1 + rng() % 3;
    for (std::size_t theta = 1; theta <= 4; ++theta) {
      RunConfig plain;
      plain.size.left = plain.size.right = theta;
      plain.size.prune_anchor = plain.size.prune_local = false;
      plain.size.prune_solution = plain.size.prune_left = false;
      plain.k = k;
      RunStats pruned;
      large(g, k, theta, {}, &pruned);
      const auto unpruned = enumerate_large(g, plain, false, [](const Biplex&, std::size_t) {});
      EXPECT_LE(pruned.recursive_calls, unpruned.recursive_calls);
    }
  }
}

TEST(Large, IdsAreReportedInTheOriginalGraph) {
  const auto g = gen_er(40, 40, 5.0, 9);
  std::vector<Biplex> got;
  enumerate_large(g, 1, 3, RunConfig{}, [&](const Biplex& h, std::size_t) { got.push_back(h); });
  for (const auto& h : got) {
    EXPECT_TRUE(is_kbiplex(g, h, 1));
    EXPECT_TRUE(is_maximal(g, h, 1));
    EXPECT_GE(h.left.size(), 3u);
    EXPECT_GE(h.right.size(), 3u);
  }
}

}  // namespace
}  // namespace kbiplex
