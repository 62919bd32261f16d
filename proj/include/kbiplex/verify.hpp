#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kbiplex/generator.hpp"
#include "kbiplex/large.hpp"
#include "kbiplex/oracle.hpp"
#include "kbiplex/traversal.hpp"

namespace kbiplex {

struct CheckRecord {
  std::string name;
  bool pass = true;
  std::string witness;  // empty on pass
};

struct VerifyReport {
  std::vector<CheckRecord> records;

  bool pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
  }
  const CheckRecord* first_failure() const {
    for (const auto& r : records)
      if (!r.pass) return &r;
    return nullptr;
  }
  void add(std::string name, bool pass, std::string witness = {}) {
    records.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
  }
  void append(const VerifyReport& other, const std::string& prefix) {
    for (const auto& r : other.records) records.push_back({prefix + r.name, r.pass, r.witness});
  }
};

inline nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : report.records)
    out.push_back({{"name", r.name}, {"pass", r.pass}, {"witness", r.witness}});
  return out;
}

inline std::string config_label(const RunConfig& cfg) {
  std::string s = to_string(cfg.mode) + "/" + to_string(cfg.variant) + "/" +
                  (cfg.exclusion ? "excl" : "noexcl") + "/" +
                  (cfg.anchor_side == Side::Left ? "left" : "right");
  if (cfg.mode == Mode::Improved && !cfg.right_shrinking) s += "/no-rs";
  return s;
}

namespace detail {

inline std::string describe(const BipartiteGraph& g, const char* what, const Biplex& h) {
  return std::string(what) + " " + format_biplex(g, h);
}

// Compares an emitted sequence with the expected sorted set.
inline void check_output(const BipartiteGraph& g, Tolerance k, std::vector<Biplex> got,
                         const std::vector<Biplex>& want, VerifyReport& rep) {
  std::vector<Biplex> sorted = got;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  rep.add("no_duplicates", dup == sorted.end(),
          dup == sorted.end() ? "" : describe(g, "duplicate", *dup));
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Biplex> missing, extra;
  std::set_difference(want.begin(), want.end(), sorted.begin(), sorted.end(),
                      std::back_inserter(missing));
  std::set_difference(sorted.begin(), sorted.end(), want.begin(), want.end(),
                      std::back_inserter(extra));
  std::string witness;
  if (!missing.empty())
    witness = describe(g, "missing", missing.front());
  else if (!extra.empty())
    witness = describe(g, "unexpected", extra.front());
  rep.add("oracle_equivalence", missing.empty() && extra.empty(),
          witness + " (" + std::to_string(sorted.size()) + " emitted, " +
              std::to_string(want.size()) + " expected)");

  std::string bad;
  for (const auto& h : sorted)
    if (!is_kbiplex(g, h, k) || !is_maximal(g, h, k)) {
      bad = describe(g, "not maximal", h);
      break;
    }
  rep.add("maximality", bad.empty(), bad);
}

}  // namespace detail

/// Runs one configuration and checks it against the oracle: exact set
/// equality, no duplicates, maximality, R'' ⊆ R on every retained
/// right-shrinking link, and the call-gap bound. Size-constrained runs filter
/// their output, so the gap bound is checked only without thresholds.
inline VerifyReport verify_run(const BipartiteGraph& g, Tolerance k, RunConfig cfg,
                               RunStats* stats_out = nullptr) {
  VerifyReport rep;
  cfg.k = k;
  cfg.collect_stats = true;
  std::vector<Biplex> want = brute_force_mbps(g, k);
  if (cfg.size.active())
    std::erase_if(want, [&](const Biplex& h) { return !cfg.size.admits(h); });
  RunStats st;
  std::vector<Biplex> got;
  auto sink = [&](const Biplex& h, std::size_t) { got.push_back(h); };
  if (cfg.size.active())
    st = enumerate_large(g, cfg, true, sink);
  else
    st = traverse(g, cfg, sink);
  detail::check_output(g, k, std::move(got), want, rep);
  if (!cfg.size.active())
    rep.add("delay_bound", st.max_call_gap <= 2,
            "max call gap " + std::to_string(st.max_call_gap));
  rep.add("right_shrinking_links", st.right_shrink_violations == 0,
          std::to_string(st.right_shrink_violations) + " links with R'' not within R");
  if (stats_out) *stats_out = st;
  return rep;
}

/// Every configuration the library supports, in a fixed order.
inline std::vector<RunConfig> all_configs(Tolerance k) {
  std::vector<RunConfig> out;
  for (Mode m : {Mode::Baseline, Mode::Improved})
    for (LocalVariant v : kAllLocalVariants)
      for (bool excl : {false, true})
        for (Side a : {Side::Left, Side::Right}) {
          RunConfig c;
          c.k = k;
          c.mode = m;
          c.variant = v;
          c.exclusion = excl;
          c.anchor_side = a;
          out.push_back(c);
        }
  return out;
}

struct LinkChain {
  std::size_t improved_excl = 0;
  std::size_t improved = 0;
  std::size_t left_anchored = 0;
  std::size_t baseline = 0;

  bool ordered() const {
    return improved_excl <= improved && improved <= left_anchored && left_anchored <= baseline;
  }
  std::string str() const {
    return std::to_string(improved_excl) + " <= " + std::to_string(improved) + " <= " +
           std::to_string(left_anchored) + " <= " + std::to_string(baseline);
  }
};

/// Links traversed by the four configurations of the monotonicity chain.
inline LinkChain link_chain(const BipartiteGraph& g, Tolerance k, LocalVariant variant = kL20R20,
                            std::optional<std::size_t> limit = std::nullopt) {
  auto links = [&](Mode m, bool rs, bool excl) {
    RunConfig c;
    c.k = k;
    c.mode = m;
    c.variant = variant;
    c.right_shrinking = rs;
    c.exclusion = excl;
    c.limit = limit;
    return traverse(g, c, [](const Biplex&, std::size_t) {}).links;
  };
  return {links(Mode::Improved, true, true), links(Mode::Improved, true, false),
          links(Mode::Improved, false, false), links(Mode::Baseline, false, false)};
}

/// All configurations plus the link-monotonicity chain on one graph.
inline VerifyReport verify_graph(const BipartiteGraph& g, Tolerance k,
                                 const std::vector<Biplex>& preseed = {}) {
  VerifyReport rep;
  for (RunConfig c : all_configs(k)) {
    c.store_preseed = preseed;
    rep.append(verify_run(g, k, c), config_label(c) + ":");
  }
  const LinkChain chain = link_chain(g, k);
  rep.add("link_monotonicity", chain.ordered(), chain.str());
  return rep;
}

struct RandomGraphSpec {
  Index n_left = 0;
  Index n_right = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic stream of small random instances: sides in [1, max_side],
/// edge probability uniform in [0, 1], k in [1, k_max].
class RandomSuite {
 public:
  RandomSuite(std::uint64_t seed, Index max_side, Index k_max)
      : rng_(seed), max_side_(max_side), k_max_(k_max) {}

  struct Instance {
    RandomGraphSpec spec;
    BipartiteGraph graph;
    Index k = 1;
  };

  Instance next() {
    std::uniform_int_distribution<Index> side(1, max_side_), kd(1, k_max_);
    std::uniform_real_distribution<double> fill(0.0, 1.0);
    Instance in;
    in.spec.n_left = side(rng_);
    in.spec.n_right = side(rng_);
    const double pairs = static_cast<double>(in.spec.n_left) * in.spec.n_right;
    in.spec.density = std::floor(fill(rng_) * pairs) / (in.spec.n_left + in.spec.n_right);
    in.spec.seed = rng_();
    in.graph = gen_er(in.spec.n_left, in.spec.n_right, in.spec.density, in.spec.seed);
    in.k = kd(rng_);
    return in;
  }

 private:
  std::mt19937_64 rng_;
  Index max_side_;
  Index k_max_;
};

}  // namespace kbiplex
