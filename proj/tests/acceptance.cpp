// One PASS/FAIL line per acceptance criterion; non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "kbiplex/edge_list.hpp"
#include "kbiplex/generator.hpp"
#include "kbiplex/large.hpp"
#include "kbiplex/local_enum.hpp"
#include "kbiplex/oracle.hpp"
#include "kbiplex/traversal.hpp"
#include "kbiplex/verify.hpp"

namespace {

using namespace kbiplex;
using Clock = std::chrono::steady_clock;

// Pinned parameters.
constexpr std::uint64_t kSuiteSeed = 20240601;
constexpr std::size_t kSuiteGraphs = 200;
constexpr Index kSuiteMaxSide = 6;
constexpr Index kSuiteKMax = 3;
constexpr std::size_t kMaxCallGap = 2;
constexpr std::size_t kContexts = 500;
constexpr std::size_t kThetaMax = 4;
// Criterion 3's larger graph: 500 + 500 vertices, density 5, k = 1. Its MBP
// count is far beyond a two-minute budget, so each chain run stops at the
// first kMidLimit solutions.
constexpr Index kMidSide = 500;
constexpr double kMidDensity = 5.0;
constexpr std::uint64_t kMidSeed = 5;
constexpr std::size_t kMidLimit = 1000;
// Criterion 8: 5000 + 5000 vertices, density 10, k = 1, first 1000 MBPs.
constexpr Index kPerfSide = 5000;
constexpr double kPerfDensity = 10.0;
constexpr std::uint64_t kPerfSeed = 1;
constexpr std::size_t kPerfLimit = 1000;
constexpr double kPerfSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<RandomSuite::Instance> suite() {
  RandomSuite s(kSuiteSeed, kSuiteMaxSide, kSuiteKMax);
  std::vector<RandomSuite::Instance> out;
  for (std::size_t i = 0; i < kSuiteGraphs; ++i) out.push_back(s.next());
  return out;
}

std::string where(std::size_t t, const RandomSuite::Instance& in) {
  std::ostringstream s;
  s << "graph " << t << " (nl=" << in.spec.n_left << " nr=" << in.spec.n_right
    << " density=" << in.spec.density << " seed=" << in.spec.seed << " k=" << in.k << ")";
  return s.str();
}

// Gaps observed across criteria 1 and 3, checked by criterion 4.
std::size_t g_worst_gap = 0;

Outcome oracle_equivalence(const std::vector<RandomSuite::Instance>& graphs, std::size_t& runs) {
  Outcome o;
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto& in = graphs[t];
    for (const RunConfig& c : all_configs(in.k)) {
      RunStats st;
      const auto rep = verify_run(in.graph, in.k, c, &st);
      g_worst_gap = std::max(g_worst_gap, st.max_call_gap);
      ++runs;
      for (const auto& r : rep.records)
        if (!r.pass && r.name != "delay_bound")
          o.fail(where(t, in) + " " + config_label(c) + ": " + r.name + " " + r.witness);
    }
  }
  return o;
}

Outcome canonical_example() {
  Outcome o;
  const auto g = load_edge_list(std::string_view("a x\nb z\n- y\n"), EdgeListFormat::Plain);
  const LabelIndex idx(g);
  std::vector<Biplex> k1;
  for (const char* s : {"L: | R: x y z", "L: a | R: x y", "L: b | R: y z", "L: a b | R: x z"})
    k1.push_back(parse_biplex(s, idx));
  std::sort(k1.begin(), k1.end());
  const std::vector<Biplex> k2{parse_biplex("L: a b | R: x y z", idx)};
  for (const RunConfig& c : all_configs(1)) {
    auto got1 = enumerate_all(g, c);
    std::sort(got1.begin(), got1.end());
    if (got1 != k1) o.fail(config_label(c) + ": k=1 output differs");
    RunConfig c2 = c;
    c2.k = 2;
    if (enumerate_all(g, c2) != k2) o.fail(config_label(c) + ": k=2 output differs");
  }
  return o;
}

Outcome link_monotonicity(const std::vector<RandomSuite::Instance>& graphs, std::string& mid) {
  Outcome o;
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto chain = link_chain(graphs[t].graph, graphs[t].k);
    if (!chain.ordered()) o.fail(where(t, graphs[t]) + ": " + chain.str());
  }
  const auto g = gen_er(kMidSide, kMidSide, kMidDensity, kMidSeed);
  auto run = [&](Mode m, bool rs, bool excl) {
    RunConfig c;
    c.k = 1;
    c.mode = m;
    c.right_shrinking = rs;
    c.exclusion = excl;
    c.limit = kMidLimit;
    const auto st = traverse(g, c, [](const Biplex&, std::size_t) {});
    g_worst_gap = std::max(g_worst_gap, st.max_call_gap);
    if (st.solutions != kMidLimit) o.fail("1k graph stopped at " + std::to_string(st.solutions));
    return st.links;
  };
  const LinkChain chain{run(Mode::Improved, true, true), run(Mode::Improved, true, false),
                        run(Mode::Improved, false, false), run(Mode::Baseline, false, false)};
  mid = chain.str();
  if (!chain.ordered()) o.fail("1k graph: " + chain.str());
  return o;
}

Outcome large_equivalence(const std::vector<RandomSuite::Instance>& graphs) {
  Outcome o;
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto& in = graphs[t];
    const auto all = brute_force_mbps(in.graph, in.k);
    for (std::size_t theta = 1; theta <= kThetaMax; ++theta) {
      std::vector<Biplex> want;
      for (const auto& h : all)
        if (h.left.size() >= theta && h.right.size() >= theta) want.push_back(h);
      std::vector<Biplex> got;
      const auto pruned = enumerate_large(in.graph, in.k, theta, RunConfig{},
                                          [&](const Biplex& h, std::size_t) { got.push_back(h); });
      std::sort(got.begin(), got.end());
      if (got != want) o.fail(where(t, in) + " theta=" + std::to_string(theta) + ": set differs");

      RunConfig plain;
      plain.k = in.k;
      plain.size.left = plain.size.right = theta;
      plain.size.prune_anchor = plain.size.prune_local = false;
      plain.size.prune_solution = plain.size.prune_left = false;
      const auto unpruned = enumerate_large(in.graph, plain, false, [](const Biplex&, std::size_t) {});
      if (pruned.recursive_calls > unpruned.recursive_calls)
        o.fail(where(t, in) + " theta=" + std::to_string(theta) + ": " +
               std::to_string(pruned.recursive_calls) + " calls with prunings > " +
               std::to_string(unpruned.recursive_calls) + " without");
    }
  }
  return o;
}

Outcome local_variants() {
  Outcome o;
  std::mt19937_64 rng(kSuiteSeed + 6);
  LocalEnumOptions opts;
  opts.check_excess = true;
  std::size_t contexts = 0;
  while (contexts < kContexts) {
    const Index nl = 2 + rng() % 6, nr = 1 + rng() % 7;
    const auto m = rng() % (std::uint64_t{nl} * nr + 1);
    const auto g = gen_er(nl, nr, static_cast<double>(m) / (nl + nr), rng());
    const Tolerance k{static_cast<Index>(1 + rng() % 3), static_cast<Index>(1 + rng() % 3)};
    const auto mbps = brute_force_mbps(g, k);
    const Biplex& base = mbps[rng() % mbps.size()];
    VertexSet outside;
    for (Index v = 0; v < nl; ++v)
      if (!std::binary_search(base.left.begin(), base.left.end(), v)) outside.push_back(v);
    if (outside.empty()) continue;
    const Index anchor = outside[rng() % outside.size()];
    const auto want = brute_force_local(g, base, anchor, k);
    for (LocalVariant var : kAllLocalVariants) {
      try {
        auto got = enum_almost_sat(g, {base, anchor, k}, var, opts);
        std::sort(got.begin(), got.end());
        if (got != want) o.fail("context " + std::to_string(contexts) + " " + to_string(var) + ": set differs");
      } catch (const ContractViolation& e) {
        o.fail("context " + std::to_string(contexts) + " " + to_string(var) + ": " + e.what());
      }
    }
    ++contexts;
  }
  return o;
}

Outcome path_constructor(const std::vector<RandomSuite::Instance>& graphs, std::size_t& paths) {
  Outcome o;
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto& in = graphs[t];
    for (const auto& target : brute_force_mbps(in.graph, in.k)) {
      PathTrace trace;
      try {
        trace = construct_left_anchored_path(in.graph, in.k, target);
      } catch (const std::exception& e) {
        o.fail(where(t, in) + ": " + e.what());
        continue;
      }
      ++paths;
      if (trace.solutions.back() != target) o.fail(where(t, in) + ": path ends elsewhere");
      for (std::size_t i = 0; i + 1 < trace.solutions.size(); ++i) {
        const auto& hi = trace.solutions[i];
        if (!std::includes(hi.right.begin(), hi.right.end(), target.right.begin(), target.right.end()))
          o.fail(where(t, in) + ": R'' not within R_" + std::to_string(i));
        if (similarity(trace.solutions[i + 1], target) < similarity(hi, target) + 1)
          o.fail(where(t, in) + ": similarity did not grow at step " + std::to_string(i));
      }
    }
  }
  return o;
}

Outcome performance(std::string& detail) {
  Outcome o;
  const auto g = gen_er(kPerfSide, kPerfSide, kPerfDensity, kPerfSeed);
  auto run = [&](Mode m, double& secs) {
    RunConfig c;
    c.k = 1;
    c.mode = m;
    c.limit = kPerfLimit;
    const auto t0 = Clock::now();
    const auto st = traverse(g, c, [](const Biplex&, std::size_t) {});
    secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (st.solutions != kPerfLimit) o.fail(to_string(m) + " stopped at " + std::to_string(st.solutions));
    return st.links;
  };
  double ti = 0, tb = 0;
  const auto li = run(Mode::Improved, ti);
  const auto lb = run(Mode::Baseline, tb);
  char buf[160];
  std::snprintf(buf, sizeof buf, "mode i %.2fs %zu links, mode b %.2fs %zu links", ti, li, tb, lb);
  detail = buf;
  if (ti >= kPerfSeconds) o.fail("mode i took " + std::to_string(ti) + "s");
  if (lb < li) o.fail("links(b) < links(i)");
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const char* name, const std::function<Outcome(std::string&)>& f) {
    const auto t0 = Clock::now();
    std::string note;
    Outcome o = f(note);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    all = all && o.pass;
    std::printf("%s %d %s [%.1fs]", o.pass ? "PASS" : "FAIL", id, name, secs);
    if (!note.empty()) std::printf(" %s", note.c_str());
    if (!o.pass) std::printf(" :: %s", o.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
  };

  const auto graphs = suite();
  report(1, "oracle equivalence", [&](std::string& note) {
    std::size_t runs = 0;
    auto o = oracle_equivalence(graphs, runs);
    note = std::to_string(graphs.size()) + " graphs, " + std::to_string(runs) + " runs";
    return o;
  });
  report(2, "canonical example", [](std::string&) { return canonical_example(); });
  report(3, "link monotonicity", [&](std::string& note) {
    std::string mid;
    auto o = link_monotonicity(graphs, mid);
    note = "1k graph, first " + std::to_string(kMidLimit) + ": " + mid;
    return o;
  });
  report(4, "delay bound", [](std::string& note) {
    Outcome o;
    note = "max call gap " + std::to_string(g_worst_gap);
    if (g_worst_gap > kMaxCallGap) o.fail("gap " + std::to_string(g_worst_gap));
    return o;
  });
  report(5, "large-MBP equivalence", [&](std::string&) { return large_equivalence(graphs); });
  report(6, "local variants", [](std::string& note) {
    note = std::to_string(kContexts) + " contexts";
    return local_variants();
  });
  report(7, "path constructor", [&](std::string& note) {
    std::size_t paths = 0;
    auto o = path_constructor(graphs, paths);
    note = std::to_string(paths) + " paths";
    return o;
  });
  report(8, "performance smoke", [](std::string& note) { return performance(note); });
  return all ? 0 : 1;
}
