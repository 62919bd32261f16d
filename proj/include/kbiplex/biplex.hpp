#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kbiplex/bigraph.hpp"

namespace kbiplex {

/// Number of non-neighbors each side tolerates. `left` bounds how many right
/// vertices a left member may miss; `right` the converse. A single k converts
/// implicitly to the symmetric pair.
struct Tolerance {
  Index left = 1;
  Index right = 1;

  constexpr Tolerance() = default;
  constexpr Tolerance(Index k) : left(k), right(k) {}  // NOLINT(google-explicit-constructor)
  constexpr Tolerance(Index l, Index r) : left(l), right(r) {}

  constexpr Index of(Side s) const noexcept { return s == Side::Left ? left : right; }
  constexpr Tolerance swapped() const noexcept { return {right, left}; }

  friend constexpr bool operator==(Tolerance, Tolerance) = default;
};

inline void require_valid(Tolerance k) {
  if (k.left < 1 || k.right < 1) throw std::invalid_argument("k must be at least 1");
}

/// An induced subgraph given by its two vertex sets. Both sets are sorted.
struct Biplex {
  VertexSet left;
  VertexSet right;

  const VertexSet& side(Side s) const noexcept { return s == Side::Left ? left : right; }
  VertexSet& side(Side s) noexcept { return s == Side::Left ? left : right; }
  std::size_t size() const noexcept { return left.size() + right.size(); }

  Biplex transposed() const { return {right, left}; }

  friend auto operator<=>(const Biplex&, const Biplex&) = default;
  friend bool operator==(const Biplex&, const Biplex&) = default;
};

inline Biplex make_biplex(VertexSet l, VertexSet r) {
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return {std::move(l), std::move(r)};
}

namespace detail {

inline bool strictly_sorted(std::span<const Index> s) {
  return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

inline void require_well_formed(const BipartiteGraph& g, std::span<const Index> l,
                                std::span<const Index> r) {
  if (!strictly_sorted(l) || !strictly_sorted(r))
    throw ContractViolation("vertex sets must be strictly ascending");
  if ((!l.empty() && l.back() >= g.num_left()) || (!r.empty() && r.back() >= g.num_right()))
    throw ContractViolation("vertex id out of range");
}

}  // namespace detail

/// True iff every left member misses at most k.left right members and every
/// right member misses at most k.right left members.
inline bool is_kbiplex(const BipartiteGraph& g, std::span<const Index> l, std::span<const Index> r,
                       Tolerance k) {
  require_valid(k);
  detail::require_well_formed(g, l, r);
  for (Index v : l)
    if (bar_delta(g, {Side::Left, v}, r) > k.left) return false;
  for (Index u : r)
    if (bar_delta(g, {Side::Right, u}, l) > k.right) return false;
  return true;
}

inline bool is_kbiplex(const BipartiteGraph& g, const Biplex& h, Tolerance k) {
  return is_kbiplex(g, h.left, h.right, k);
}

// ---------------------------------------------------------------------------
// Canonical key

/// Injective byte encoding: |L|, L ascending, |R|, R ascending, each as a
/// big-endian 32-bit word. Byte order matches the tuple order.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::string bytes_;
};

inline CanonicalKey canonical_key(const Biplex& h) {
  std::string out;
  out.reserve(4 * (h.size() + 2));
  auto put = [&out](std::uint32_t x) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((x >> shift) & 0xff));
  };
  auto put_set = [&](const VertexSet& s) {
    put(static_cast<std::uint32_t>(s.size()));
    for (Index x : s) put(x);
  };
  put_set(h.left);
  put_set(h.right);
  return CanonicalKey(std::move(out));
}

// ---------------------------------------------------------------------------
// Text form: "L: a b | R: x z"

inline std::string format_biplex(const BipartiteGraph& g, const Biplex& h) {
  std::string out = "L:";
  for (Index v : h.left) out += ' ' + g.label(Side::Left, v);
  out += " | R:";
  for (Index u : h.right) out += ' ' + g.label(Side::Right, u);
  return out;
}

/// Reverse lookup from printed labels to ids.
class LabelIndex {
 public:
  explicit LabelIndex(const BipartiteGraph& g) {
    for (Side s : {Side::Left, Side::Right}) {
      auto& m = maps_[static_cast<int>(s)];
      for (Index i = 0; i < g.num_vertices(s); ++i) m.emplace(g.label(s, i), i);
    }
  }

  Index find(Side s, const std::string& label) const {
    const auto& m = maps_[static_cast<int>(s)];
    auto it = m.find(label);
    if (it == m.end()) throw std::invalid_argument("unknown vertex label '" + label + "'");
    return it->second;
  }

 private:
  std::array<std::unordered_map<std::string, Index>, 2> maps_;
};

inline Biplex parse_biplex(std::string_view line, const LabelIndex& labels) {
  std::istringstream in{std::string(line)};
  std::string tok;
  if (!(in >> tok) || tok != "L:") throw std::invalid_argument("biplex line must start with 'L:'");
  VertexSet l, r;
  bool right = false;
  while (in >> tok) {
    if (tok == "|") {
      if (!(in >> tok) || tok != "R:") throw std::invalid_argument("expected 'R:' after '|'");
      right = true;
      continue;
    }
    (right ? r : l).push_back(labels.find(right ? Side::Right : Side::Left, tok));
  }
  if (!right) throw std::invalid_argument("biplex line lacks the '| R:' part");
  return make_biplex(std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Incremental state

enum class ExtensionPool { AllVertices, LeftOnly };

/// Mutable (L, R) over a fixed graph with per-member miss counts.
///
/// Membership uses epoch stamps, so `load` costs the total degree of the
/// loaded members rather than the size of the graph. One instance is meant to
/// be reused across many biplexes of the same graph.
class BiplexState {
 public:
  BiplexState(const BipartiteGraph& g, Tolerance k) : g_(&g), k_(k) {
    for (Side s : {Side::Left, Side::Right}) {
      const auto n = g.num_vertices(s);
      stamp_[idx(s)].assign(n, 0);
      scratch_[idx(s)].assign(n, 0);
      miss_[idx(s)].assign(n, 0);
    }
  }

  const BipartiteGraph& graph() const noexcept { return *g_; }
  Tolerance tolerance() const noexcept { return k_; }

  void load(std::span<const Index> l, std::span<const Index> r) {
    bump(epoch_, stamp_);
    for (Side s : {Side::Left, Side::Right}) {
      auto& mem = members_[idx(s)];
      const auto src = s == Side::Left ? l : r;
      mem.assign(src.begin(), src.end());
      for (Index x : mem) stamp_[idx(s)][x] = epoch_;
      tight_[idx(s)] = 0;
      over_[idx(s)] = 0;
    }
    for (Side s : {Side::Left, Side::Right}) {
      const Side o = opposite(s);
      const auto opp_size = members_[idx(o)].size();
      for (Index x : members_[idx(s)]) {
        std::size_t adj = 0;
        for (Index y : g_->neighbors(s, x)) adj += stamp_[idx(o)][y] == epoch_;
        set_miss(s, x, static_cast<Index>(opp_size - adj));
      }
    }
  }
  void load(const Biplex& h) { load(h.left, h.right); }

  bool contains(Side s, Index x) const { return stamp_[idx(s)][x] == epoch_; }
  Index misses(Side s, Index x) const { return miss_[idx(s)][x]; }
  const std::vector<Index>& members(Side s) const noexcept { return members_[idx(s)]; }
  bool is_kbiplex() const noexcept { return over_[0] == 0 && over_[1] == 0; }

  /// Whether adding `x` on side `s` keeps the k-biplex property.
  bool can_add(Side s, Index x) const {
    if (contains(s, x)) return false;
    const Side o = opposite(s);
    const auto& opp = members_[idx(o)];
    const auto nbrs = g_->neighbors(s, x);
    std::size_t adj = 0, tight_adj = 0;
    const Index lim_o = k_.of(o);
    if (nbrs.size() <= 4 * opp.size()) {
      for (Index y : nbrs)
        if (stamp_[idx(o)][y] == epoch_) {
          ++adj;
          tight_adj += miss_[idx(o)][y] >= lim_o;
        }
    } else {
      for (Index y : opp)
        if (g_->adjacent(s, x, y)) {
          ++adj;
          tight_adj += miss_[idx(o)][y] >= lim_o;
        }
    }
    if (opp.size() - adj > k_.of(s)) return false;
    return tight_adj == tight_[idx(o)] && over_[idx(o)] == 0;
  }

  /// Adds `x` unconditionally, updating miss counts on both sides.
  void add(Side s, Index x) {
    if (contains(s, x)) return;
    const Side o = opposite(s);
    bump(scratch_epoch_, scratch_);
    for (Index y : g_->neighbors(s, x)) scratch_[idx(o)][y] = scratch_epoch_;
    Index own = 0;
    for (Index y : members_[idx(o)]) {
      if (scratch_[idx(o)][y] == scratch_epoch_) continue;
      ++own;
      set_miss(o, y, miss_[idx(o)][y] + 1, true);
    }
    stamp_[idx(s)][x] = epoch_;
    members_[idx(s)].push_back(x);
    set_miss(s, x, own);
  }

  /// Sorted superset of the vertices on side `s` that `can_add` accepts.
  std::vector<Index> candidates(Side s) const {
    const Side o = opposite(s);
    const auto& opp = members_[idx(o)];
    std::vector<Index> out;
    if (over_[idx(o)] != 0) return out;
    const Index lim_o = k_.of(o);
    if (tight_[idx(o)] > 0) {
      // Every tight member must stay adjacent; scan the sparsest one.
      Index best = 0;
      std::size_t best_deg = std::numeric_limits<std::size_t>::max();
      for (Index y : opp)
        if (miss_[idx(o)][y] >= lim_o && g_->degree(o, y) < best_deg) {
          best = y;
          best_deg = g_->degree(o, y);
        }
      for (Index x : g_->neighbors(o, best))
        if (!contains(s, x)) out.push_back(x);
      return out;
    }
    if (opp.size() <= k_.of(s)) {
      for (Index x = 0; x < g_->num_vertices(s); ++x)
        if (!contains(s, x)) out.push_back(x);
      return out;
    }
    // A newcomer misses at most k_.of(s) members, so it neighbors at least one
    // of any k_.of(s) + 1 members.
    std::vector<Index> probe(opp.begin(), opp.end());
    const std::size_t take = k_.of(s) + 1;
    std::partial_sort(probe.begin(), probe.begin() + static_cast<std::ptrdiff_t>(take), probe.end(),
                      [&](Index a, Index b) { return g_->degree(o, a) < g_->degree(o, b); });
    for (std::size_t i = 0; i < take; ++i)
      for (Index x : g_->neighbors(o, probe[i]))
        if (!contains(s, x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool any_addable(Side s) const {
    const Side o = opposite(s);
    if (over_[idx(o)] == 0 && tight_[idx(o)] == 0 && members_[idx(o)].size() <= k_.of(s))
      return members_[idx(s)].size() < g_->num_vertices(s);
    for (Index x : candidates(s))
      if (can_add(s, x)) return true;
    return false;
  }

  /// Greedy extension in ascending id order, left side first.
  void extend(ExtensionPool pool) {
    for (Index x : candidates(Side::Left))
      if (can_add(Side::Left, x)) add(Side::Left, x);
    if (pool == ExtensionPool::AllVertices)
      for (Index x : candidates(Side::Right))
        if (can_add(Side::Right, x)) add(Side::Right, x);
  }

  Biplex biplex() const {
    Biplex h{members_[0], members_[1]};
    std::sort(h.left.begin(), h.left.end());
    std::sort(h.right.begin(), h.right.end());
    return h;
  }

 private:
  static constexpr int idx(Side s) noexcept { return s == Side::Left ? 0 : 1; }

  static void bump(std::uint32_t& epoch, std::array<std::vector<std::uint32_t>, 2>& stamps) {
    if (++epoch == 0) {
      for (auto& v : stamps) std::fill(v.begin(), v.end(), 0);
      epoch = 1;
    }
  }

  void set_miss(Side s, Index x, Index value, bool existing = false) {
    const Index lim = k_.of(s);
    auto& m = miss_[idx(s)][x];
    if (existing) {
      tight_[idx(s)] -= m == lim;
      over_[idx(s)] -= m > lim;
    }
    m = value;
    tight_[idx(s)] += m == lim;
    over_[idx(s)] += m > lim;
  }

  const BipartiteGraph* g_;
  Tolerance k_;
  std::uint32_t epoch_ = 0;
  std::uint32_t scratch_epoch_ = 0;
  std::array<std::vector<std::uint32_t>, 2> stamp_;
  std::array<std::vector<std::uint32_t>, 2> scratch_;
  std::array<std::vector<Index>, 2> miss_;
  std::array<std::vector<Index>, 2> members_;
  std::array<std::size_t, 2> tight_{0, 0};
  std::array<std::size_t, 2> over_{0, 0};
};

// ---------------------------------------------------------------------------
// Maximality and extension

/// True iff no single outside vertex can join `h`. Requires `h` to be a k-biplex.
inline bool is_maximal(const BipartiteGraph& g, const Biplex& h, Tolerance k) {
  if (!is_kbiplex(g, h, k)) throw ContractViolation("is_maximal: input is not a k-biplex");
  BiplexState st(g, k);
  st.load(h);
  return !st.any_addable(Side::Left) && !st.any_addable(Side::Right);
}

inline Biplex extend_to_max(const BipartiteGraph& g, const Biplex& h, Tolerance k,
                            ExtensionPool pool) {
  if (!is_kbiplex(g, h, k)) throw ContractViolation("extend_to_max: input is not a k-biplex");
  BiplexState st(g, k);
  st.load(h);
  st.extend(pool);
  return st.biplex();
}

/// (L0, R) where L0 greedily collects left vertices in ascending id order.
inline Biplex initial_solution(const BipartiteGraph& g, Tolerance k) {
  require_valid(k);
  VertexSet all_right(g.num_right());
  std::iota(all_right.begin(), all_right.end(), Index{0});
  BiplexState st(g, k);
  st.load({}, all_right);
  st.extend(ExtensionPool::LeftOnly);
  return st.biplex();
}

}  // namespace kbiplex
