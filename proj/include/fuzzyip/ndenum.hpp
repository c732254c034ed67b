#pragma once

// Nondominated-set computation for MOILPs (maximization): lattice
// enumeration, dominance, a brute-force oracle, and the recursive hypercube
// subdivision search driven by a nondominated-count oracle.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyip/box.hpp"
#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"
#include "fuzzyip/model.hpp"

namespace fuzzyip {

inline constexpr std::uint64_t kDefaultGuardLimit = 100'000'000;

inline void check_guard(const HyperBox& box, std::uint64_t guard) {
  if (box.volume() > guard) {
    throw GuardLimitExceeded("box " + box.str() + " holds more than " + std::to_string(guard) +
                             " lattice points; raise --guard or tighten bounds");
  }
}

/// All lattice points of box inside the polytope, lexicographic order.
inline std::vector<LatticePoint> enumerate_lattice(const CrispPolytope& p, const HyperBox& box,
                                                   std::uint64_t guard = kDefaultGuardLimit) {
  if (box.dim() != p.num_vars()) throw InvalidArgument("enumerate_lattice: box dimension mismatch");
  check_guard(box, guard);
  std::vector<LatticePoint> out;
  for_each_point(box, [&](const LatticePoint& x) {
    if (p.contains(x)) out.push_back(x);
  });
  return out;
}

/// u dominates v (maximization): u >= v componentwise and u != v.
inline bool dominates(std::span<const Integer> u, std::span<const Integer> v) {
  require_same_length(u.size(), v.size(), "dominates");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) return false;
    if (u[i] > v[i]) strict = true;
  }
  return strict;
}

inline bool dominates(const IntVector& u, const IntVector& v) {
  return dominates(std::span<const Integer>(u), std::span<const Integer>(v));
}

struct NdEntry {
  LatticePoint x;
  IntVector value;  // C x

  friend bool operator==(const NdEntry&, const NdEntry&) = default;
};

/// Insertion-ordered set of nondominated solutions.
class NdSet {
 public:
  void add(NdEntry e) { entries_.push_back(std::move(e)); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const NdEntry& operator[](std::size_t i) const { return entries_.at(i); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<NdEntry>& entries() const { return entries_; }

  /// Points in lexicographic order, for order-insensitive comparison.
  std::vector<LatticePoint> sorted_points() const {
    std::vector<LatticePoint> pts;
    pts.reserve(entries_.size());
    for (const auto& e : entries_) pts.push_back(e.x);
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  std::size_t count_in(const HyperBox& box) const {
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(), [&](const NdEntry& e) { return box.contains(e.x); }));
  }

 private:
  std::vector<NdEntry> entries_;
};

inline IntVector objective_values(const MoilpProblem& p, const LatticePoint& x) {
  return mat_vec<std::int64_t>(p.C, std::span<const std::int64_t>(x));
}

/**
 * Every feasible lattice point of the search box that no feasible lattice
 * point dominates. Points sharing an objective vector are all kept.
 *
 * Output order: objective vectors in decreasing lexicographic order, ties by
 * increasing point.
 */
inline NdSet nd_bruteforce(const MoilpProblem& p, std::uint64_t guard = kDefaultGuardLimit) {
  const auto points = enumerate_lattice(p.polytope, p.box, guard);
  std::vector<IntVector> values;
  values.reserve(points.size());
  for (const auto& x : points) values.push_back(objective_values(p, x));

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  // A dominator is lexicographically larger, so it has already been seen; if
  // it is itself dominated, some accepted vector dominates both.
  std::vector<IntVector> accepted;
  NdSet out;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const auto& v = values[order[i]];
    const bool dominated = std::any_of(accepted.begin(), accepted.end(),
                                       [&](const IntVector& u) { return dominates(u, v); });
    if (!dominated) {
      accepted.push_back(v);
      for (std::size_t t = i; t < j; ++t) out.add({points[order[t]], values[order[t]]});
    }
    i = j;
  }
  return out;
}

/// Reference count oracle: |ND(p) inside box|, recomputing ND(p) each call.
inline std::size_t count_nd_in_box(const HyperBox& box, const MoilpProblem& p,
                                   std::uint64_t guard = kDefaultGuardLimit) {
  return nd_bruteforce(p, guard).count_in(box);
}

/// Anything that can count the nondominated solutions inside a box. Must be
/// pure (same box, same count) and additive over disjoint boxes.
template <class O>
concept NdCountOracle = requires(O& o, const HyperBox& box) {
  { o.count_in_box(box) } -> std::convertible_to<std::size_t>;
};

/// Count oracle backed by a cached brute-force ND set.
class ReferenceOracle {
 public:
  explicit ReferenceOracle(const MoilpProblem& p, std::uint64_t guard = kDefaultGuardLimit)
      : nd_(nd_bruteforce(p, guard)) {}

  std::size_t count_in_box(const HyperBox& box) const { return nd_.count_in(box); }
  const NdSet& nd_set() const { return nd_; }

 private:
  NdSet nd_;
};

/// Wraps an oracle and counts calls.
template <NdCountOracle O>
class CountingOracle {
 public:
  explicit CountingOracle(O& inner) : inner_(inner) {}
  std::size_t count_in_box(const HyperBox& box) {
    ++calls_;
    return inner_.count_in_box(box);
  }
  std::uint64_t calls() const { return calls_; }

 private:
  O& inner_;
  std::uint64_t calls_ = 0;
};

/// Asks two oracles and throws OracleInconsistency when they disagree.
template <NdCountOracle A, NdCountOracle B>
class CrossCheckOracle {
 public:
  CrossCheckOracle(A& primary, B& reference) : primary_(primary), reference_(reference) {}
  std::size_t count_in_box(const HyperBox& box) {
    const std::size_t a = primary_.count_in_box(box);
    const std::size_t b = reference_.count_in_box(box);
    if (a != b) {
      throw OracleInconsistency("oracles disagree on " + box.str() + ": " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
    ++checked_;
    return a;
  }
  std::uint64_t checked() const { return checked_; }

 private:
  A& primary_;
  B& reference_;
  std::uint64_t checked_ = 0;
};

/**
 * Locates the only nondominated point of a box by per-coordinate binary
 * search on oracle counts. Uses at most sum_i ceil(log2(side_i)) calls, plus
 * one more when known_count is not supplied.
 */
template <NdCountOracle O>
LatticePoint extract_unique(const HyperBox& box, O& oracle,
                            std::optional<std::size_t> known_count = std::nullopt) {
  const std::size_t count = known_count ? *known_count : oracle.count_in_box(box);
  if (count != 1) {
    throw InvalidArgument("extract_unique: box " + box.str() + " holds " + std::to_string(count) +
                          " nondominated points, expected 1");
  }
  HyperBox cur = box;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    std::int64_t lo = box[i].lo, hi = box[i].hi;
    while (lo < hi) {
      const std::int64_t mid = HyperBox::floor_mid(lo, hi);
      const std::size_t c = oracle.count_in_box(cur.with(i, {lo, mid}));
      if (c == 1) hi = mid;
      else if (c == 0) lo = mid + 1;
      else throw OracleInconsistency("sub-box of a count-1 box reports " + std::to_string(c));
    }
    cur = cur.with(i, {lo, lo});
  }
  LatticePoint x(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) x[i] = cur[i].lo;
  return x;
}

struct DelayStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t boxes_visited = 0;  // boxes whose count was queried while subdividing
  std::uint64_t max_delay = 0;      // most oracle calls between consecutive outputs
  std::uint64_t delay_bound = 0;
};

inline unsigned ceil_log2(std::uint64_t v) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < v) ++r;
  return r;
}

/// 2^d * d * ceil(log2(L+1)) + sum_i ceil(log2(side_i)) for the root box.
inline std::uint64_t delay_bound(const HyperBox& root) {
  std::uint64_t max_side = 1, extract = 0;
  for (const auto& d : root.intervals()) {
    const auto side = static_cast<std::uint64_t>(d.side());
    max_side = std::max(max_side, side);
    extract += ceil_log2(side);
  }
  const std::uint64_t L = std::max<std::uint64_t>(1, max_side - 1);
  const std::uint64_t dim = root.dim();
  return (std::uint64_t{1} << dim) * dim * ceil_log2(L + 1) + extract;
}

struct BoxSearchResult {
  NdSet nd;
  DelayStats stats;
};

/**
 * Depth-first search over the midpoint subdivision of p.box. Boxes with
 * count 0 are discarded, count-1 boxes are resolved with extract_unique, and
 * larger counts are subdivided again. Each nondominated point is passed to
 * emit exactly once, as soon as it is found.
 *
 * Throws OracleInconsistency when child counts do not add up to the parent's.
 */
template <NdCountOracle O, class Emit>
BoxSearchResult box_search(const MoilpProblem& p, O& oracle, Emit&& emit) {
  CountingOracle<O> counted(oracle);
  BoxSearchResult result;
  auto& stats = result.stats;
  stats.delay_bound = delay_bound(p.box);
  std::uint64_t calls_at_last_output = 0;

  auto query = [&](const HyperBox& b) {
    ++stats.boxes_visited;
    return counted.count_in_box(b);
  };
  auto output = [&](const HyperBox& b) {
    NdEntry e{extract_unique(b, counted, std::size_t{1}), {}};
    e.value = objective_values(p, e.x);
    stats.max_delay = std::max(stats.max_delay, counted.calls() - calls_at_last_output);
    calls_at_last_output = counted.calls();
    emit(static_cast<const NdEntry&>(e));
    result.nd.add(std::move(e));
  };

  struct Frame {
    std::vector<HyperBox> children;
    std::vector<std::size_t> counts;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  auto expand = [&](const HyperBox& b, std::size_t count) {
    if (b.is_singleton()) {
      throw OracleInconsistency("single lattice point " + b.str() + " reported count " +
                                std::to_string(count));
    }
    Frame f;
    f.children = b.subdivide();
    std::size_t sum = 0;
    for (const auto& c : f.children) {
      f.counts.push_back(query(c));
      sum += f.counts.back();
    }
    if (sum != count) {
      throw OracleInconsistency("box " + b.str() + " reported " + std::to_string(count) +
                                " nondominated points but its children sum to " +
                                std::to_string(sum));
    }
    stack.push_back(std::move(f));
  };

  const std::size_t root = query(p.box);
  if (root == 1) output(p.box);
  else if (root > 1) expand(p.box, root);

  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.next == top.children.size()) {
      stack.pop_back();
      continue;
    }
    const std::size_t i = top.next++;
    const std::size_t c = top.counts[i];
    if (c == 0) continue;
    const HyperBox child = top.children[i];  // copy: expand() may reallocate the stack
    if (c == 1) output(child);
    else expand(child, c);
  }
  stats.max_delay = std::max(stats.max_delay, counted.calls() - calls_at_last_output);
  stats.oracle_calls = counted.calls();
  return result;
}

template <NdCountOracle O>
BoxSearchResult box_search(const MoilpProblem& p, O& oracle) {
  return box_search(p, oracle, [](const NdEntry&) {});
}

}  // namespace fuzzyip
