#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "kbiplex/bigraph.hpp"
#include "kbiplex/biplex.hpp"

namespace kbiplex {

/// Refinement level for the right-side subset enumeration.
enum class REnum { R10, R20 };
/// Refinement level for the left-side removal enumeration.
enum class LEnum { L10, L20 };

struct LocalVariant {
  LEnum l = LEnum::L20;
  REnum r = REnum::R20;

  friend constexpr bool operator==(LocalVariant, LocalVariant) = default;
};

inline constexpr LocalVariant kL10R10{LEnum::L10, REnum::R10};
inline constexpr LocalVariant kL10R20{LEnum::L10, REnum::R20};
inline constexpr LocalVariant kL20R10{LEnum::L20, REnum::R10};
inline constexpr LocalVariant kL20R20{LEnum::L20, REnum::R20};
inline constexpr LocalVariant kAllLocalVariants[] = {kL10R10, kL10R20, kL20R10, kL20R20};

inline std::string to_string(LocalVariant v) {
  return std::string(v.l == LEnum::L10 ? "l1" : "l2") + (v.r == REnum::R10 ? "r1" : "r2");
}

inline LocalVariant parse_local_variant(const std::string& s) {
  for (LocalVariant v : kAllLocalVariants)
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

/// A solution H = (L, R) together with a left anchor outside L.
struct AlmostSatContext {
  Biplex base;
  Index anchor = 0;
  Tolerance k;
};

/// R split by the anchor: `keep` = neighbors of the anchor, `enum1` = the
/// anchor's non-neighbors with slack on their own side, `enum2` = the
/// anchor's non-neighbors that are already at their limit.
struct RPartition {
  VertexSet keep;
  VertexSet enum1;
  VertexSet enum2;
};

struct LocalEnumOptions {
  /// Skip right picks whose |R'| would fall below this size.
  std::size_t r_floor = 0;
  /// Verify that exactly the picked limit-reached vertices exceed the limit
  /// by one in (L + anchor, R') before any removal. Throws on failure.
  bool check_excess = false;
};

namespace detail {

/// Calls f(indices) for every r-combination of {0..n-1} in lexicographic
/// order. Stops early when f returns false. Returns false iff stopped.
template <class F>
bool for_each_combination(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!f(std::span<const std::size_t>(idx))) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class F>
constexpr bool invoke_continue(F& f, auto&&... args) {
  if constexpr (std::is_void_v<std::invoke_result_t<F&, decltype(args)...>>) {
    f(std::forward<decltype(args)>(args)...);
    return true;
  } else {
    return static_cast<bool>(f(std::forward<decltype(args)>(args)...));
  }
}

}  // namespace detail

/// Enumerates right picks (R1'', R2'') with |R1'' + R2''| <= cap.
///
/// Under R20 a pick smaller than `cap` must take all of `enum1`; otherwise an
/// unpicked slack vertex could still join and the candidate is never maximal.
/// `keep_size` and `floor` implement the |R'| >= floor cut.
template <class T, class F>
bool for_each_r_pick(std::span<const T> enum1, std::span<const T> enum2, std::size_t cap,
                     REnum variant, std::size_t keep_size, std::size_t floor, F&& f) {
  std::vector<T> r1, r2;
  for (std::size_t s1 = 0; s1 <= std::min(cap, enum1.size()); ++s1) {
    for (std::size_t s2 = 0; s2 <= std::min(cap - s1, enum2.size()); ++s2) {
      if (variant == REnum::R20 && s1 + s2 < cap && s1 < enum1.size()) continue;
      if (keep_size + s1 + s2 < floor) continue;
      const bool go = detail::for_each_combination(enum1.size(), s1, [&](auto i1) {
        r1.clear();
        for (auto i : i1) r1.push_back(enum1[i]);
        return detail::for_each_combination(enum2.size(), s2, [&](auto i2) {
          r2.clear();
          for (auto i : i2) r2.push_back(enum2[i]);
          return detail::invoke_continue(f, std::span<const T>(r1), std::span<const T>(r2));
        });
      });
      if (!go) return false;
    }
  }
  return true;
}

/// Per-solution precomputation shared by every anchor of that solution.
///
/// Positions index into base.left / base.right. Each left member misses at
/// most k.left right members, so both miss lists are short.
class BaseProfile {
 public:
  BaseProfile(const BipartiteGraph& g, Biplex base, Tolerance k) : base_(std::move(base)), k_(k) {
    const auto& l = base_.left;
    const auto& r = base_.right;
    left_misses_.resize(l.size());
    right_misses_.resize(r.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      const auto nb = g.neighbors(Side::Left, l[i]);
      auto it = nb.begin();
      for (std::size_t j = 0; j < r.size(); ++j) {
        while (it != nb.end() && *it < r[j]) ++it;
        if (it == nb.end() || *it != r[j]) left_misses_[i].push_back(static_cast<Index>(j));
      }
      if (left_misses_[i].size() > k.left)
        throw ContractViolation("base of an almost-satisfying graph is not a k-biplex");
    }
    for (std::size_t i = 0; i < l.size(); ++i)
      for (Index j : left_misses_[i]) right_misses_[j].push_back(static_cast<Index>(i));
    for (const auto& m : right_misses_)
      if (m.size() > k.right)
        throw ContractViolation("base of an almost-satisfying graph is not a k-biplex");
  }

  const Biplex& base() const noexcept { return base_; }
  Tolerance tolerance() const noexcept { return k_; }
  const std::vector<std::vector<Index>>& left_misses() const noexcept { return left_misses_; }
  const std::vector<std::vector<Index>>& right_misses() const noexcept { return right_misses_; }

  BaseProfile transposed() const {
    BaseProfile t;
    t.base_ = base_.transposed();
    t.k_ = k_.swapped();
    t.left_misses_ = right_misses_;
    t.right_misses_ = left_misses_;
    return t;
  }

 private:
  BaseProfile() = default;

  Biplex base_;
  Tolerance k_;
  std::vector<std::vector<Index>> left_misses_;
  std::vector<std::vector<Index>> right_misses_;
};

/// Local solutions of G[H + v] that contain the left anchor v.
///
/// Every result keeps the anchor's neighbors in R, picks at most k.left of its
/// non-neighbors, and drops a minimal set of left members so that each picked
/// limit-reached right vertex loses one non-neighbor.
class AlmostSatEnumerator {
 public:
  AlmostSatEnumerator(const BipartiteGraph& g, const BaseProfile& profile)
      : g_(&g), p_(&profile) {}

  /// Calls sink(const Biplex&) per local solution; a false return stops.
  /// Returns false iff the sink stopped the enumeration.
  template <class Sink>
  bool run(Index anchor, LocalVariant variant, const LocalEnumOptions& opts, Sink&& sink) {
    const auto& base = p_->base();
    const Tolerance k = p_->tolerance();
    if (std::binary_search(base.left.begin(), base.left.end(), anchor))
      throw ContractViolation("anchor already belongs to the base");
    partition(anchor);

    const std::size_t cap = k.left;
    std::vector<Index> l_remo, removed;
    std::vector<std::vector<Index>> successes;
    Biplex out;

    return for_each_r_pick<Index>(
        enum1_, enum2_, cap, variant.r, keep_.size(), opts.r_floor,
        [&](std::span<const Index> r1, std::span<const Index> r2) {
          for (Index j : r1) picked_[j] = 1;
          for (Index j : r2) picked_[j] = 1;
          if (opts.check_excess) check_excess(r1, r2);

          l_remo.clear();
          for (Index j : r2)
            for (Index i : p_->right_misses()[j]) l_remo.push_back(i);
          std::sort(l_remo.begin(), l_remo.end());
          l_remo.erase(std::unique(l_remo.begin(), l_remo.end()), l_remo.end());

          successes.clear();
          bool go = true;
          const std::size_t pick = r1.size() + r2.size();
          for (std::size_t size = 0; go && size <= r2.size(); ++size) {
            go = detail::for_each_combination(l_remo.size(), size, [&](auto idx) {
              removed.clear();
              for (auto t : idx) removed.push_back(l_remo[t]);
              if (variant.l == LEnum::L20)
                for (const auto& s : successes)
                  if (std::includes(removed.begin(), removed.end(), s.begin(), s.end())) return true;
              set_removed(removed, 1);
              const bool ok = covers(r2) && locally_maximal(removed, pick, cap);
              if (ok) materialize(anchor, r1, r2, out);
              set_removed(removed, 0);
              if (!ok) return true;
              if (variant.l == LEnum::L20) successes.push_back(removed);
              return detail::invoke_continue(sink, std::as_const(out));
            });
          }
          for (Index j : r1) picked_[j] = 0;
          for (Index j : r2) picked_[j] = 0;
          return go;
        });
  }

  const std::vector<Index>& keep_positions() const noexcept { return keep_; }
  const std::vector<Index>& enum1_positions() const noexcept { return enum1_; }
  const std::vector<Index>& enum2_positions() const noexcept { return enum2_; }

  void partition(Index anchor) {
    const auto& r = p_->base().right;
    const Tolerance k = p_->tolerance();
    keep_.clear();
    enum1_.clear();
    enum2_.clear();
    in_enum_.assign(r.size(), 0);
    picked_.assign(r.size(), 0);
    removed_flag_.assign(p_->base().left.size(), 0);
    const auto nb = g_->neighbors(Side::Left, anchor);
    auto it = nb.begin();
    for (std::size_t j = 0; j < r.size(); ++j) {
      while (it != nb.end() && *it < r[j]) ++it;
      const auto pos = static_cast<Index>(j);
      if (it != nb.end() && *it == r[j]) {
        keep_.push_back(pos);
        continue;
      }
      in_enum_[j] = 1;
      if (p_->right_misses()[j].size() + 1 <= k.right)
        enum1_.push_back(pos);
      else
        enum2_.push_back(pos);
    }
  }

 private:
  void set_removed(const std::vector<Index>& removed, char flag) {
    for (Index i : removed) removed_flag_[i] = flag;
  }

  // Misses of right position j against (L minus removed) + anchor.
  std::size_t right_miss_after(Index j) const {
    std::size_t m = in_enum_[j];
    for (Index i : p_->right_misses()[j]) m += !removed_flag_[i];
    return m;
  }

  bool covers(std::span<const Index> r2) const {
    const Index kr = p_->tolerance().right;
    for (Index j : r2)
      if (right_miss_after(j) > kr) return false;
    return true;
  }

  // Maximality inside G[H + v]: no removed left member and no unpicked
  // right vertex can rejoin. Left members never exceed their limit on a
  // subset of R, so only the right-side counts need checking.
  bool locally_maximal(const std::vector<Index>& removed, std::size_t pick, std::size_t cap) const {
    const Index kr = p_->tolerance().right;
    for (Index i : removed) {
      bool fits = true;
      for (Index j : p_->left_misses()[i]) {
        if (!in_enum_[j] || picked_[j]) {
          if (right_miss_after(j) + 1 > kr) {
            fits = false;
            break;
          }
        }
      }
      if (fits) return false;
    }
    if (pick + 1 <= cap) {
      // right_miss_after already counts the anchor for these vertices.
      for (Index j : enum1_)
        if (!picked_[j] && right_miss_after(j) <= kr) return false;
      for (Index j : enum2_)
        if (!picked_[j] && right_miss_after(j) <= kr) return false;
    }
    return true;
  }

  void check_excess(std::span<const Index> r1, std::span<const Index> r2) const {
    const Tolerance k = p_->tolerance();
    auto in = [](std::span<const Index> s, Index j) { return std::find(s.begin(), s.end(), j) != s.end(); };
    for (Index j : keep_)
      if (p_->right_misses()[j].size() > k.right)
        throw std::logic_error("kept right vertex exceeds its limit");
    for (Index j : r1)
      if (p_->right_misses()[j].size() + 1 > k.right)
        throw std::logic_error("slack right vertex exceeds its limit");
    for (Index j : r2)
      if (p_->right_misses()[j].size() + 1 != k.right + 1)
        throw std::logic_error("limit-reached right vertex does not exceed by exactly one");
    if (r1.size() + r2.size() > k.left) throw std::logic_error("anchor exceeds its limit");
    for (const auto& lm : p_->left_misses()) {
      std::size_t m = 0;
      for (Index j : lm) m += !in_enum_[j] || in(r1, j) || in(r2, j);
      if (m > k.left) throw std::logic_error("left member exceeds its limit");
    }
  }

  void materialize(Index anchor, std::span<const Index> r1, std::span<const Index> r2,
                   Biplex& out) const {
    const auto& base = p_->base();
    out.left.clear();
    out.right.clear();
    bool placed = false;
    for (std::size_t i = 0; i < base.left.size(); ++i) {
      if (removed_flag_[i]) continue;
      if (!placed && base.left[i] > anchor) {
        out.left.push_back(anchor);
        placed = true;
      }
      out.left.push_back(base.left[i]);
    }
    if (!placed) out.left.push_back(anchor);
    // Positions ascend with ids, so merging keep/r1/r2 positions keeps order.
    std::vector<Index> pos(keep_.begin(), keep_.end());
    pos.insert(pos.end(), r1.begin(), r1.end());
    pos.insert(pos.end(), r2.begin(), r2.end());
    std::sort(pos.begin(), pos.end());
    for (Index j : pos) out.right.push_back(base.right[j]);
  }

  const BipartiteGraph* g_;
  const BaseProfile* p_;
  std::vector<Index> keep_, enum1_, enum2_;
  std::vector<char> in_enum_, picked_, removed_flag_;
};

// ---------------------------------------------------------------------------
// Id-based entry points

inline RPartition partition_r(const BipartiteGraph& g, const AlmostSatContext& ctx) {
  BaseProfile prof(g, ctx.base, ctx.k);
  AlmostSatEnumerator e(g, prof);
  if (std::binary_search(ctx.base.left.begin(), ctx.base.left.end(), ctx.anchor))
    throw ContractViolation("anchor already belongs to the base");
  e.partition(ctx.anchor);
  RPartition p;
  for (Index j : e.keep_positions()) p.keep.push_back(ctx.base.right[j]);
  for (Index j : e.enum1_positions()) p.enum1.push_back(ctx.base.right[j]);
  for (Index j : e.enum2_positions()) p.enum2.push_back(ctx.base.right[j]);
  return p;
}

/// All right picks for a partition, in enumeration order.
inline std::vector<std::pair<VertexSet, VertexSet>> enum_r_subsets(const RPartition& p,
                                                                   Index cap, REnum variant) {
  std::vector<std::pair<VertexSet, VertexSet>> out;
  for_each_r_pick<Index>(p.enum1, p.enum2, cap, variant, p.keep.size(), 0,
                         [&](std::span<const Index> r1, std::span<const Index> r2) {
                           out.emplace_back(VertexSet(r1.begin(), r1.end()),
                                            VertexSet(r2.begin(), r2.end()));
                         });
  return out;
}

/// Left members that miss at least one vertex of `r2`.
inline VertexSet compute_l_remo(const BipartiteGraph& g, std::span<const Index> l,
                                std::span<const Index> r2) {
  VertexSet out;
  for (Index v : l)
    if (bar_delta(g, {Side::Left, v}, r2) > 0) out.push_back(v);
  return out;
}

template <class Sink>
  requires std::invocable<Sink&, const Biplex&>
bool enum_almost_sat(const BipartiteGraph& g, const AlmostSatContext& ctx, LocalVariant variant,
                     Sink&& sink, const LocalEnumOptions& opts = {}) {
  require_valid(ctx.k);
  if (ctx.anchor >= g.num_left()) throw ContractViolation("anchor out of range");
  if (!is_kbiplex(g, ctx.base, ctx.k))
    throw ContractViolation("base of an almost-satisfying graph is not a k-biplex");
  BaseProfile prof(g, ctx.base, ctx.k);
  AlmostSatEnumerator e(g, prof);
  return e.run(ctx.anchor, variant, opts, std::forward<Sink>(sink));
}

inline std::vector<Biplex> enum_almost_sat(const BipartiteGraph& g, const AlmostSatContext& ctx,
                                           LocalVariant variant, const LocalEnumOptions& opts = {}) {
  std::vector<Biplex> out;
  enum_almost_sat(g, ctx, variant, [&](const Biplex& h) { out.push_back(h); }, opts);
  return out;
}

}  // namespace kbiplex
