#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kbiplex/bigraph.hpp"
#include "kbiplex/biplex.hpp"
#include "kbiplex/local_enum.hpp"

namespace kbiplex {

enum class Mode { Baseline, Improved };

inline std::string to_string(Mode m) { return m == Mode::Baseline ? "b" : "i"; }

/// Size thresholds and the individual prunings that exploit them.
struct SizeConstraint {
  std::size_t left = 0;   // |L| >= left
  std::size_t right = 0;  // |R| >= right
  bool prune_anchor = true;    // skip v when its neighbors in R plus k stay below `right`
  bool prune_local = true;     // skip right picks with |R'| < right
  bool prune_solution = true;  // do not expand solutions with |R| < right
  bool prune_left = true;      // do not expand when too few left vertices remain unexcluded

  bool active() const noexcept { return left > 0 || right > 0; }
  bool admits(const Biplex& h) const noexcept {
    return h.left.size() >= left && h.right.size() >= right;
  }
};

struct RunConfig {
  Tolerance k = 1;
  Mode mode = Mode::Improved;
  LocalVariant variant = kL20R20;
  /// Right runs the same algorithm on the transposed graph, starting from (L, R0).
  Side anchor_side = Side::Left;
  /// Improved mode only: drop local solutions that a right vertex can extend.
  bool right_shrinking = true;
  /// Anchors finished at an ancestor (or earlier at this solution) are
  /// excluded; a link whose extended solution contains one is dropped.
  bool exclusion = true;
  SizeConstraint size;
  std::optional<std::size_t> limit;
  /// Extra bookkeeping: right-shrinking relation checks on every kept link.
  bool collect_stats = false;
  bool measure_delay = false;
  /// Test hook: solutions pre-inserted into the store are treated as already
  /// seen and therefore never emitted.
  std::vector<Biplex> store_preseed;
};

struct RunStats {
  std::size_t solutions = 0;
  std::size_t links = 0;
  std::size_t recursive_calls = 0;
  std::size_t local_solutions = 0;
  std::size_t max_call_gap = 0;
  double max_wall_gap_seconds = 0.0;
  std::size_t right_shrink_violations = 0;
  bool stopped_early = false;
};

/// Ordered set of canonical keys: the dedup structure of the traversal.
class SolutionStore {
 public:
  bool insert(const Biplex& h) { return keys_.insert(canonical_key(h)).second; }
  bool contains(const Biplex& h) const { return keys_.contains(canonical_key(h)); }
  std::size_t size() const noexcept { return keys_.size(); }

 private:
  std::set<CanonicalKey> keys_;
};

enum class EmitPhase { Pre, Post };

/// Alternating output around recursive calls: even depths emit on entry, odd
/// depths on exit. Also tracks how many calls pass between two outputs.
class DelayTrickEmitter {
 public:
  explicit DelayTrickEmitter(bool measure_wall) : measure_wall_(measure_wall) {
    if (measure_wall_) last_ = Clock::now();
  }

  void on_call() { ++calls_since_output_; }

  static bool emits(EmitPhase phase, std::size_t depth) noexcept {
    return (phase == EmitPhase::Pre) == (depth % 2 == 0);
  }

  /// Record an output event.
  void on_output() {
    max_gap_ = std::max(max_gap_, calls_since_output_);
    calls_since_output_ = 0;
    if (measure_wall_) {
      const auto now = Clock::now();
      max_wall_ = std::max(max_wall_, std::chrono::duration<double>(now - last_).count());
      last_ = now;
    }
  }

  void finish() {
    max_gap_ = std::max(max_gap_, calls_since_output_);
    if (measure_wall_)
      max_wall_ = std::max(max_wall_, std::chrono::duration<double>(Clock::now() - last_).count());
  }

  std::size_t max_call_gap() const noexcept { return max_gap_; }
  double max_wall_gap() const noexcept { return max_wall_; }

 private:
  using Clock = std::chrono::steady_clock;
  bool measure_wall_;
  Clock::time_point last_{};
  std::size_t calls_since_output_ = 0;
  std::size_t max_gap_ = 0;
  double max_wall_ = 0.0;
};

/// True iff some right vertex outside `h_loc` keeps the k-biplex property when
/// added, i.e. the link towards the extension of `h_loc` is not right-shrinking.
inline bool right_shrinking_check(const BipartiteGraph& g, const Biplex& h_loc, Tolerance k) {
  if (!is_kbiplex(g, h_loc, k)) throw ContractViolation("right_shrinking_check: not a k-biplex");
  BiplexState st(g, k);
  st.load(h_loc);
  return st.any_addable(Side::Right);
}

namespace detail {

/// Explicit-stack reverse search shared by both modes.
///
/// Runs on `g` as given; callers handle transposition for right anchoring and
/// id remapping for cores through `Output`.
template <class Output>
class TraversalEngine {
 public:
  TraversalEngine(const BipartiteGraph& g, const RunConfig& cfg, Output& output)
      : g_(g), cfg_(cfg), k_(cfg.k), out_(output), state_(g, cfg.k),
        emitter_(cfg.measure_delay) {
    for (Side s : {Side::Left, Side::Right}) excl_mark_[idx(s)].assign(g.num_vertices(s), 0);
    if (cfg_.mode == Mode::Baseline) gt_ = std::make_unique<BipartiteGraph>(g.transposed());
  }

  RunStats run() {
    require_valid(k_);
    for (const auto& h : cfg_.store_preseed) store_.insert(h);
    Biplex h0 = initial_solution(g_, k_);
    const bool fresh = store_.insert(h0);
    if (fresh) {
      if (expandable(h0))
        enter(std::move(h0), 0);
      else
        leaf(h0);
    }
    while (!stack_.empty() && !stop_) step();
    emitter_.finish();
    stats_.max_call_gap = emitter_.max_call_gap();
    stats_.max_wall_gap_seconds = emitter_.max_wall_gap();
    stats_.stopped_early = stop_;
    return stats_;
  }

 private:
  struct Frame {
    Frame(Biplex h_, std::size_t depth_, BaseProfile profile_)
        : h(std::move(h_)), depth(depth_), profile(std::move(profile_)) {}

    Biplex h;
    std::size_t depth = 0;
    BaseProfile profile;
    std::unique_ptr<BaseProfile> profile_t;
    Side anchor_side = Side::Left;
    Index next_anchor = 0;
    std::optional<VertexId> current;
    std::vector<Biplex> pending;
    std::size_t pending_pos = 0;
    std::size_t excl_pushed = 0;
  };

  static constexpr int idx(Side s) noexcept { return s == Side::Left ? 0 : 1; }

  bool improved() const noexcept { return cfg_.mode == Mode::Improved; }
  bool shrinking() const noexcept { return improved() && cfg_.right_shrinking; }

  bool expandable(const Biplex& h) const {
    const auto& sz = cfg_.size;
    if (!sz.active() || !shrinking()) return true;
    if (sz.prune_solution && h.right.size() < sz.right) return false;
    if (sz.prune_left && cfg_.exclusion && g_.num_left() - excl_left_ < sz.left) return false;
    return true;
  }

  void emit(const Biplex& h) {
    if (cfg_.size.active() && !cfg_.size.admits(h)) return;
    emitter_.on_output();
    ++stats_.solutions;
    if (!out_(h, stats_.solutions - 1)) stop_ = true;
    if (cfg_.limit && stats_.solutions >= *cfg_.limit) stop_ = true;
  }

  void enter(Biplex h, std::size_t depth) {
    ++stats_.recursive_calls;
    emitter_.on_call();
    BaseProfile prof(g_, h, k_);
    auto& f = stack_.emplace_back(std::move(h), depth, std::move(prof));
    if (DelayTrickEmitter::emits(EmitPhase::Pre, depth)) emit(f.h);
  }

  // A stored solution whose expansion is pruned: output it right away.
  void leaf(const Biplex& h) { emit(h); }

  void leave() {
    Frame& f = stack_.back();
    if (DelayTrickEmitter::emits(EmitPhase::Post, f.depth)) emit(f.h);
    for (std::size_t i = 0; i < f.excl_pushed; ++i) pop_exclusion();
    stack_.pop_back();
  }

  void push_exclusion(VertexId w) {
    excl_stack_.push_back(w);
    ++excl_mark_[idx(w.side)][w.index];
    excl_left_ += w.side == Side::Left;
  }
  void pop_exclusion() {
    const VertexId w = excl_stack_.back();
    excl_stack_.pop_back();
    --excl_mark_[idx(w.side)][w.index];
    excl_left_ -= w.side == Side::Left;
  }
  bool excluded(Side s, Index x) const { return excl_mark_[idx(s)][x] != 0; }
  bool touches_exclusion(const Biplex& h) const {
    for (Index x : h.left)
      if (excluded(Side::Left, x)) return true;
    for (Index x : h.right)
      if (excluded(Side::Right, x)) return true;
    return false;
  }

  // Moves to the next anchor of the top frame and fills its local solutions.
  // Returns false when the frame has no anchors left.
  bool next_anchor(Frame& f) {
    if (f.current && cfg_.exclusion) {
      push_exclusion(*f.current);
      ++f.excl_pushed;
    }
    f.current.reset();
    f.pending.clear();
    f.pending_pos = 0;
    while (true) {
      const Side s = f.anchor_side;
      const auto& own = f.h.side(s);
      // Members are sorted, so skipping them is a merge against the scan.
      while (f.next_anchor < g_.num_vertices(s) &&
             std::binary_search(own.begin(), own.end(), f.next_anchor))
        ++f.next_anchor;
      if (f.next_anchor >= g_.num_vertices(s)) {
        if (s == Side::Left && !improved()) {
          f.anchor_side = Side::Right;
          f.next_anchor = 0;
          continue;
        }
        return false;
      }
      const Index v = f.next_anchor++;
      f.current = VertexId{s, v};
      if (cfg_.exclusion && excluded(s, v)) continue;
      if (s == Side::Left && skip_anchor(f, v)) continue;
      collect_local(f, s, v);
      return true;
    }
  }

  bool skip_anchor(const Frame& f, Index v) const {
    const auto& sz = cfg_.size;
    if (!sz.active() || !shrinking() || !sz.prune_anchor) return false;
    return delta(g_, {Side::Left, v}, f.h.right) + k_.left < sz.right;
  }

  void collect_local(Frame& f, Side s, Index v) {
    LocalEnumOptions opts;
    if (shrinking() && cfg_.size.prune_local) opts.r_floor = cfg_.size.right;
    auto sink = [&](const Biplex& loc) { f.pending.push_back(loc); };
    if (s == Side::Left) {
      AlmostSatEnumerator e(g_, f.profile);
      e.run(v, cfg_.variant, opts, sink);
    } else {
      if (!f.profile_t) f.profile_t = std::make_unique<BaseProfile>(f.profile.transposed());
      AlmostSatEnumerator e(*gt_, *f.profile_t);
      e.run(v, cfg_.variant, opts, [&](const Biplex& loc) { f.pending.push_back(loc.transposed()); });
    }
    stats_.local_solutions += f.pending.size();
  }

  // Turns a local solution into the solution it links to, or nullopt when
  // the link is pruned.
  std::optional<Biplex> follow(const Biplex& loc) {
    // The extension contains loc, so this only saves work.
    if (cfg_.exclusion && touches_exclusion(loc)) return std::nullopt;
    BiplexState& st = state_;
    st.load(loc);
    if (shrinking()) {
      if (st.any_addable(Side::Right)) return std::nullopt;
      st.extend(ExtensionPool::LeftOnly);
    } else {
      st.extend(ExtensionPool::AllVertices);
    }
    Biplex next = st.biplex();
    if (cfg_.exclusion && touches_exclusion(next))
      return std::nullopt;
    return next;
  }

  void step() {
    Frame& f = stack_.back();
    if (f.pending_pos >= f.pending.size()) {
      if (!next_anchor(f)) leave();
      return;
    }
    const Biplex& loc = f.pending[f.pending_pos++];
    auto next = follow(loc);
    if (!next) return;
    ++stats_.links;
    if (cfg_.collect_stats && shrinking() &&
        !std::includes(f.h.right.begin(), f.h.right.end(), next->right.begin(), next->right.end()))
      ++stats_.right_shrink_violations;
    if (!store_.insert(*next)) return;
    if (expandable(*next))
      enter(std::move(*next), f.depth + 1);  // invalidates f
    else
      leaf(*next);
  }

  const BipartiteGraph& g_;
  const RunConfig& cfg_;
  Tolerance k_;
  Output& out_;
  BiplexState state_;
  std::unique_ptr<BipartiteGraph> gt_;
  DelayTrickEmitter emitter_;
  SolutionStore store_;
  std::vector<Frame> stack_;
  std::vector<VertexId> excl_stack_;
  std::array<std::vector<std::uint32_t>, 2> excl_mark_;
  std::size_t excl_left_ = 0;
  RunStats stats_;
  bool stop_ = false;
};

/// Wraps a user sink: undoes the transposition, then maps ids through the
/// origin tables, and normalizes the return type to bool.
template <class Sink>
struct OutputAdapter {
  Sink& sink;
  bool transpose = false;
  const std::vector<Index>* left_origin = nullptr;
  const std::vector<Index>* right_origin = nullptr;

  bool operator()(const Biplex& h, std::size_t index) {
    Biplex o = transpose ? h.transposed() : h;
    if (left_origin) {
      for (auto& x : o.left) x = (*left_origin)[x];
      for (auto& x : o.right) x = (*right_origin)[x];
    }
    return invoke_continue(sink, std::as_const(o), index);
  }
};

template <class Sink>
RunStats run_traversal(const BipartiteGraph& g, RunConfig cfg, Sink& sink,
                       const std::vector<Index>* left_origin = nullptr,
                       const std::vector<Index>* right_origin = nullptr) {
  require_valid(cfg.k);
  if (cfg.limit && *cfg.limit == 0) throw std::invalid_argument("limit must be at least 1");
  OutputAdapter<Sink> out{sink, cfg.anchor_side == Side::Right, left_origin, right_origin};
  if (cfg.anchor_side == Side::Right) {
    const BipartiteGraph gt = g.transposed();
    cfg.k = cfg.k.swapped();
    std::swap(cfg.size.left, cfg.size.right);
    for (auto& h : cfg.store_preseed) h = h.transposed();
    TraversalEngine<OutputAdapter<Sink>> engine(gt, cfg, out);
    return engine.run();
  }
  TraversalEngine<OutputAdapter<Sink>> engine(g, cfg, out);
  return engine.run();
}

}  // namespace detail

/// Baseline reverse search: anchors from both sides, extension over all vertices.
template <class Sink>
RunStats b_traversal(const BipartiteGraph& g, RunConfig cfg, Sink&& sink) {
  cfg.mode = Mode::Baseline;
  return detail::run_traversal(g, std::move(cfg), sink);
}

/// Improved reverse search from (L0, R): left anchors only, right-shrinking
/// links only, optional exclusion.
template <class Sink>
RunStats i_traversal(const BipartiteGraph& g, RunConfig cfg, Sink&& sink) {
  cfg.mode = Mode::Improved;
  return detail::run_traversal(g, std::move(cfg), sink);
}

template <class Sink>
RunStats traverse(const BipartiteGraph& g, const RunConfig& cfg, Sink&& sink) {
  return detail::run_traversal(g, cfg, sink);
}

/// Collects every emitted solution.
inline std::vector<Biplex> enumerate_all(const BipartiteGraph& g, const RunConfig& cfg,
                                         RunStats* stats = nullptr) {
  std::vector<Biplex> out;
  auto sink = [&](const Biplex& h, std::size_t) { out.push_back(h); };
  RunStats st = traverse(g, cfg, sink);
  if (stats) *stats = st;
  return out;
}

}  // namespace kbiplex
