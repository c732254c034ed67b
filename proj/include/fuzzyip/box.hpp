#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyip/errors.hpp"

namespace fuzzyip {

/// An integer lattice point. Coordinates fit in 64 bits because every
/// enumerated box is bounded by the volume guard.
using LatticePoint = std::vector<std::int64_t>;

/// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t side() const { return hi - lo + 1; }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned integer box, the search hypercube of the subdivision search.
class HyperBox {
 public:
  HyperBox() = default;
  explicit HyperBox(std::vector<Interval> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw InvalidArgument("HyperBox needs at least one dimension");
    for (const auto& d : dims_) {
      if (d.lo > d.hi) throw InvalidArgument("HyperBox interval with lo > hi");
    }
  }

  /// [lo, hi]^d
  static HyperBox cube(std::size_t d, std::int64_t lo, std::int64_t hi) {
    return HyperBox(std::vector<Interval>(d, Interval{lo, hi}));
  }

  static HyperBox point(const LatticePoint& p) {
    std::vector<Interval> dims;
    dims.reserve(p.size());
    for (auto v : p) dims.push_back({v, v});
    return HyperBox(std::move(dims));
  }

  std::size_t dim() const { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<Interval>& intervals() const { return dims_; }

  /// Number of lattice points, saturating at UINT64_MAX.
  std::uint64_t volume() const {
    unsigned __int128 v = 1;
    for (const auto& d : dims_) {
      v *= static_cast<unsigned __int128>(d.side());
      if (v > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(v);
  }

  bool is_singleton() const {
    for (const auto& d : dims_) {
      if (d.lo != d.hi) return false;
    }
    return true;
  }

  bool contains(const LatticePoint& p) const {
    if (p.size() != dims_.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!dims_[i].contains(p[i])) return false;
    }
    return true;
  }

  bool contains(const HyperBox& other) const {
    if (other.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (other[i].lo < dims_[i].lo || other[i].hi > dims_[i].hi) return false;
    }
    return true;
  }

  /// Replace one coordinate interval.
  HyperBox with(std::size_t i, Interval iv) const {
    auto dims = dims_;
    dims.at(i) = iv;
    return HyperBox(std::move(dims));
  }

  std::optional<HyperBox> intersect(const HyperBox& other) const {
    if (other.dim() != dim()) throw InvalidArgument("HyperBox intersection: dimension mismatch");
    std::vector<Interval> dims;
    for (std::size_t i = 0; i < dim(); ++i) {
      Interval iv{std::max(dims_[i].lo, other[i].lo), std::min(dims_[i].hi, other[i].hi)};
      if (iv.lo > iv.hi) return std::nullopt;
      dims.push_back(iv);
    }
    return HyperBox(std::move(dims));
  }

  /// Row-major offset of p inside the box (first coordinate slowest).
  std::size_t offset(const LatticePoint& p) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      off = off * static_cast<std::size_t>(dims_[i].side()) +
            static_cast<std::size_t>(p[i] - dims_[i].lo);
    }
    return off;
  }

  LatticePoint at_offset(std::size_t off) const {
    LatticePoint p(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
      const auto side = static_cast<std::size_t>(dims_[i].side());
      p[i] = dims_[i].lo + static_cast<std::int64_t>(off % side);
      off /= side;
    }
    return p;
  }

  /// Midpoint subdivision: every non-degenerate dimension is split at
  /// floor((lo+hi)/2); children come low-half-first, first dimension slowest.
  std::vector<HyperBox> subdivide() const {
    std::vector<HyperBox> out{*this};
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      const auto& d = dims_[i];
      if (d.lo == d.hi) continue;
      const std::int64_t mid = floor_mid(d.lo, d.hi);
      std::vector<HyperBox> next;
      next.reserve(out.size() * 2);
      for (const auto& b : out) {
        next.push_back(b.with(i, {d.lo, mid}));
        next.push_back(b.with(i, {mid + 1, d.hi}));
      }
      out = std::move(next);
    }
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (i) os << " x ";
      os << "[" << dims_[i].lo << "," << dims_[i].hi << "]";
    }
    return os.str();
  }

  friend bool operator==(const HyperBox&, const HyperBox&) = default;

  static std::int64_t floor_mid(std::int64_t lo, std::int64_t hi) {
    const std::int64_t s = lo + hi;
    return s >= 0 ? s / 2 : -((-s + 1) / 2);
  }

 private:
  std::vector<Interval> dims_;
};

/// Visits every lattice point of the box in lexicographic order.
template <class Fn>
void for_each_point(const HyperBox& box, Fn&& fn) {
  LatticePoint p(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) p[i] = box[i].lo;
  while (true) {
    fn(static_cast<const LatticePoint&>(p));
    std::size_t i = box.dim();
    while (i > 0) {
      --i;
      if (p[i] < box[i].hi) {
        ++p[i];
        break;
      }
      p[i] = box[i].lo;
      if (i == 0) return;
    }
  }
}

}  // namespace fuzzyip
