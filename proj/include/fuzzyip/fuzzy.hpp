#pragma once

// Fuzzy numbers, alpha-cuts, ranking systems and polygonal approximation of
// LR fuzzy numbers.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"

namespace fuzzyip {

/// Closed interval [lo, hi] of a fuzzy number's alpha-cut.
struct AlphaCut {
  Rational lo;
  Rational hi;

  bool contains(const Rational& z) const { return lo <= z && z <= hi; }
  bool contains(const AlphaCut& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const AlphaCut&, const AlphaCut&) = default;
};

/// Shape t -> max(0, 1 - t^s), s a positive rational exponent.
struct LrShape {
  Rational exponent{1};
  friend bool operator==(const LrShape&, const LrShape&) = default;
};

struct Breakpoint {
  Rational z;
  Rational mu;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

namespace detail {
struct IntervalData {
  Rational lo, hi;
  friend bool operator==(const IntervalData&, const IntervalData&) = default;
};
struct TriangularData {
  Rational a1, a2, a3;
  friend bool operator==(const TriangularData&, const TriangularData&) = default;
};
struct TrapezoidalData {
  Rational a1, a2, a3, a4;
  friend bool operator==(const TrapezoidalData&, const TrapezoidalData&) = default;
};
struct PiecewiseLinearData {
  std::vector<Breakpoint> points;
  friend bool operator==(const PiecewiseLinearData&, const PiecewiseLinearData&) = default;
};
struct LrData {
  Rational a0, a1, a2;
  LrShape left, right;
  friend bool operator==(const LrData&, const LrData&) = default;
};
}  // namespace detail

enum class FuzzyKind { Interval, Triangular, Trapezoidal, PiecewiseLinear, LR };

inline const char* to_string(FuzzyKind k) {
  switch (k) {
    case FuzzyKind::Interval: return "interval";
    case FuzzyKind::Triangular: return "triangular";
    case FuzzyKind::Trapezoidal: return "trapezoidal";
    case FuzzyKind::PiecewiseLinear: return "piecewise_linear";
    case FuzzyKind::LR: return "lr";
  }
  return "?";
}

/**
 * A normal, quasi-concave fuzzy number.
 *
 * Construct through the named factories; they validate parameters and
 * normalize piecewise-linear data so the membership peaks at exactly 1.
 * Instances are immutable.
 *
 * Piecewise-linear numbers interpolate linearly between breakpoints and are 0
 * outside [z_first, z_last]. A first or last breakpoint with positive
 * membership therefore encodes a jump at the support boundary.
 */
class FuzzyNumber {
 public:
  using Data = std::variant<detail::IntervalData, detail::TriangularData,
                            detail::TrapezoidalData, detail::PiecewiseLinearData, detail::LrData>;

  static FuzzyNumber crisp(const Rational& v) { return interval(v, v); }

  static FuzzyNumber interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw InvalidArgument("interval fuzzy number needs lo <= hi");
    return FuzzyNumber(detail::IntervalData{lo, hi});
  }

  static FuzzyNumber triangular(const Rational& a1, const Rational& a2, const Rational& a3) {
    if (!(a1 <= a2 && a2 <= a3)) throw InvalidArgument("triangular fuzzy number needs a1 <= a2 <= a3");
    return FuzzyNumber(detail::TriangularData{a1, a2, a3});
  }

  static FuzzyNumber trapezoidal(const Rational& a1, const Rational& a2, const Rational& a3,
                                 const Rational& a4) {
    if (!(a1 <= a2 && a2 <= a3 && a3 <= a4)) {
      throw InvalidArgument("trapezoidal fuzzy number needs a1 <= a2 <= a3 <= a4");
    }
    return FuzzyNumber(detail::TrapezoidalData{a1, a2, a3, a4});
  }

  /// Breakpoints must have strictly increasing z, nonnegative memberships and
  /// a rise-then-fall profile. Memberships are divided by their maximum.
  static FuzzyNumber piecewise_linear(std::vector<Breakpoint> points) {
    if (points.empty()) throw InvalidArgument("piecewise-linear fuzzy number needs breakpoints");
    Rational peak = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].mu < 0) throw InvalidArgument("membership values must be nonnegative");
      if (i > 0 && !(points[i - 1].z < points[i].z)) {
        throw InvalidArgument("breakpoints must have strictly increasing z");
      }
      peak = max(peak, points[i].mu);
    }
    if (peak.is_zero()) throw InvalidArgument("membership is identically zero");
    if (peak != 1) {
      for (auto& p : points) p.mu /= peak;
    }
    bool falling = false;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].mu < points[i - 1].mu) falling = true;
      else if (falling && points[i].mu > points[i - 1].mu) {
        throw InvalidArgument("membership must rise then fall (quasi-concave)");
      }
    }
    return FuzzyNumber(detail::PiecewiseLinearData{std::move(points)});
  }

  static FuzzyNumber lr(const Rational& a0, const Rational& a1, const Rational& a2, LrShape left,
                        LrShape right) {
    if (!(a0 <= a1 && a1 <= a2)) throw InvalidArgument("LR fuzzy number needs a0 <= a1 <= a2");
    if (left.exponent <= 0 || right.exponent <= 0) {
      throw InvalidArgument("LR shape exponent must be positive");
    }
    return FuzzyNumber(detail::LrData{a0, a1, a2, left, right});
  }

  FuzzyKind kind() const { return static_cast<FuzzyKind>(data_.index()); }
  bool is_lr() const { return kind() == FuzzyKind::LR; }
  const Data& data() const { return data_; }

  template <class T>
  const T& as() const { return std::get<T>(data_); }

  /// Membership levels strictly inside (0,1) at which the membership
  /// function has a vertex. Empty for interval/triangular/trapezoidal.
  std::vector<Rational> vertex_levels() const {
    std::vector<Rational> out;
    if (const auto* pl = std::get_if<detail::PiecewiseLinearData>(&data_)) {
      for (const auto& p : pl->points) {
        if (p.mu > 0 && p.mu < 1) out.push_back(p.mu);
      }
    }
    return out;
  }

  friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

 private:
  explicit FuzzyNumber(Data d) : data_(std::move(d)) {}
  Data data_;
};

// ---------------------------------------------------------------------------

/// Strictly increasing alpha levels in (0,1], always ending at 1.
class RankingSystem {
 public:
  RankingSystem() : levels_{Rational(1)} {}

  explicit RankingSystem(std::vector<Rational> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw InvalidArgument("ranking system must not be empty");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (levels_[i] <= 0 || levels_[i] > 1) throw InvalidArgument("ranking levels must lie in (0,1]");
      if (i > 0 && !(levels_[i - 1] < levels_[i])) {
        throw InvalidArgument("ranking levels must be strictly increasing");
      }
    }
    if (levels_.back() != 1) throw InvalidArgument("ranking system must contain alpha = 1");
  }

  /// Sorts and deduplicates, then validates.
  static RankingSystem from_unsorted(std::vector<Rational> levels) {
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return RankingSystem(std::move(levels));
  }

  /// {1/k, 2/k, ..., 1}
  static RankingSystem uniform(unsigned k) {
    if (k == 0) throw InvalidArgument("uniform ranking needs k >= 1");
    std::vector<Rational> levels;
    for (unsigned i = 1; i <= k; ++i) levels.emplace_back(Integer(i), Integer(k));
    return RankingSystem(std::move(levels));
  }

  const std::vector<Rational>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  auto begin() const { return levels_.begin(); }
  auto end() const { return levels_.end(); }

  friend bool operator==(const RankingSystem&, const RankingSystem&) = default;

 private:
  std::vector<Rational> levels_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline constexpr unsigned kLrPrecisionBits = 30;

/// Linear ramp from 0 at `zero` to 1 at `one`; caller guarantees z lies between.
inline Rational ramp(const Rational& z, const Rational& zero, const Rational& one) {
  if (zero == one) return 1;
  return (z - zero) / (one - zero);
}

/// 1 - t^s for t in [0,1). Exact when s is an integer; otherwise t^p is exact
/// and its q-th root is bracketed to kLrPrecisionBits.
inline Rational lr_shape_value(const Rational& t, const LrShape& shape) {
  if (t >= 1) return 0;
  const auto& s = shape.exponent;
  const Rational powered = pow(t, s.num().convert_to<unsigned>());
  const unsigned q = s.den().convert_to<unsigned>();
  if (q == 1) return 1 - powered;
  const auto [lo, hi] = root_bracket(powered, q, kLrPrecisionBits);
  return 1 - hi;
}

/// Upper bound (within 2^-30, exact when rational) of (1 - alpha)^(1/s).
inline Rational lr_inverse_upper(const Rational& alpha, const LrShape& shape) {
  // (1-alpha)^(1/s) with s = p/q is ((1-alpha)^q)^(1/p).
  const auto& s = shape.exponent;
  const Rational base = pow(1 - alpha, s.den().convert_to<unsigned>());
  const unsigned p = s.num().convert_to<unsigned>();
  if (p == 1) return base;
  return root_bracket(base, p, kLrPrecisionBits).second;
}

inline Rational pl_membership(const std::vector<Breakpoint>& pts, const Rational& z) {
  if (z < pts.front().z || z > pts.back().z) return 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    if (z == a.z) return a.mu;
    if (z < b.z) return a.mu + (b.mu - a.mu) * (z - a.z) / (b.z - a.z);
  }
  return pts.back().mu;
}

inline AlphaCut pl_alpha_cut(const std::vector<Breakpoint>& pts, const Rational& alpha) {
  std::size_t first = 0;
  while (pts[first].mu < alpha) ++first;
  std::size_t last = pts.size() - 1;
  while (pts[last].mu < alpha) --last;
  auto cross = [&](const Breakpoint& a, const Breakpoint& b) {
    return a.z + (alpha - a.mu) / (b.mu - a.mu) * (b.z - a.z);
  };
  Rational lo = first == 0 ? pts[0].z : cross(pts[first - 1], pts[first]);
  Rational hi = last + 1 == pts.size() ? pts[last].z : cross(pts[last + 1], pts[last]);
  return {lo, hi};
}

}  // namespace detail

/// Membership degree of z. Exact for every linear-piece variant and for LR
/// shapes with integral exponent; otherwise a lower bound within 2^-30.
inline Rational membership_at(const FuzzyNumber& f, const Rational& z) {
  using namespace detail;
  return std::visit(
      [&](const auto& d) -> Rational {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, IntervalData>) {
          return (d.lo <= z && z <= d.hi) ? Rational(1) : Rational(0);
        } else if constexpr (std::is_same_v<T, TriangularData>) {
          if (z < d.a1 || z > d.a3) return 0;
          if (z <= d.a2) return ramp(z, d.a1, d.a2);
          return ramp(z, d.a3, d.a2);
        } else if constexpr (std::is_same_v<T, TrapezoidalData>) {
          if (z < d.a1 || z > d.a4) return 0;
          if (z < d.a2) return ramp(z, d.a1, d.a2);
          if (z <= d.a3) return 1;
          return ramp(z, d.a4, d.a3);
        } else if constexpr (std::is_same_v<T, PiecewiseLinearData>) {
          return pl_membership(d.points, z);
        } else {
          if (z < d.a1) {
            if (d.a0 == d.a1) return 0;
            return lr_shape_value((d.a1 - z) / (d.a1 - d.a0), d.left);
          }
          if (z == d.a1) return 1;
          if (d.a2 == d.a1) return 0;
          return lr_shape_value((z - d.a1) / (d.a2 - d.a1), d.right);
        }
      },
      f.data());
}

/// {z : membership(z) >= alpha} for alpha in (0,1]. LR endpoints are rounded
/// outward (within 2^-30) so the returned interval contains the true cut.
inline AlphaCut alpha_cut(const FuzzyNumber& f, const Rational& alpha) {
  if (alpha <= 0 || alpha > 1) throw InvalidArgument("alpha must lie in (0,1]");
  using namespace detail;
  return std::visit(
      [&](const auto& d) -> AlphaCut {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, IntervalData>) {
          return {d.lo, d.hi};
        } else if constexpr (std::is_same_v<T, TriangularData>) {
          return {d.a1 + alpha * (d.a2 - d.a1), d.a3 - alpha * (d.a3 - d.a2)};
        } else if constexpr (std::is_same_v<T, TrapezoidalData>) {
          return {d.a1 + alpha * (d.a2 - d.a1), d.a4 - alpha * (d.a4 - d.a3)};
        } else if constexpr (std::is_same_v<T, PiecewiseLinearData>) {
          return pl_alpha_cut(d.points, alpha);
        } else {
          return {d.a1 - (d.a1 - d.a0) * lr_inverse_upper(alpha, d.left),
                  d.a1 + (d.a2 - d.a1) * lr_inverse_upper(alpha, d.right)};
        }
      },
      f.data());
}

/// Alpha-cut of sum_i c_i x_i for x >= 0: [sum lo_i x_i, sum hi_i x_i].
template <class IntLike>
AlphaCut alpha_cut_dot(std::span<const FuzzyNumber> coeffs, std::span<const IntLike> x,
                       const Rational& alpha) {
  require_same_length(coeffs.size(), x.size(), "alpha_cut_dot");
  Rational lo = 0, hi = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Integer xi(x[i]);
    if (xi < 0) throw InvalidArgument("alpha_cut_dot requires x >= 0");
    if (xi == 0) continue;
    const auto cut = alpha_cut(coeffs[i], alpha);
    lo += cut.lo * xi;
    hi += cut.hi * xi;
  }
  return {lo, hi};
}

inline AlphaCut alpha_cut_dot(const std::vector<FuzzyNumber>& coeffs, const IntVector& x,
                              const Rational& alpha) {
  return alpha_cut_dot<Integer>(std::span<const FuzzyNumber>(coeffs), std::span<const Integer>(x),
                                alpha);
}

/**
 * Polygonal approximation of an LR fuzzy number that interpolates its alpha-cut
 * endpoints at alpha = i/k, i = 1..k, and the support ends at membership 0.
 *
 * The result is exact at every node of RankingSystem::uniform(k): its
 * alpha-cut at i/k equals the (outward-rounded) LR cut at i/k.
 */
inline FuzzyNumber approximate_lr(const FuzzyNumber& f, unsigned k) {
  if (!f.is_lr()) throw InvalidArgument("approximate_lr expects an LR fuzzy number");
  if (k == 0) throw InvalidArgument("approximate_lr needs k >= 1");
  const auto& d = f.as<detail::LrData>();

  std::vector<Breakpoint> left;  // increasing z, increasing mu
  if (d.a0 < d.a1) left.push_back({d.a0, 0});
  for (unsigned i = 1; i <= k; ++i) {
    const Rational alpha{Integer(i), Integer(k)};
    Rational z = alpha_cut(f, alpha).lo;
    if (!left.empty() && z < left.back().z) z = left.back().z;
    if (!left.empty() && z == left.back().z) left.back().mu = alpha;
    else left.push_back({z, alpha});
  }
  std::vector<Breakpoint> right;  // decreasing z from the far end
  if (d.a1 < d.a2) right.push_back({d.a2, 0});
  for (unsigned i = 1; i < k; ++i) {
    const Rational alpha{Integer(i), Integer(k)};
    Rational z = alpha_cut(f, alpha).hi;
    if (!right.empty() && z > right.back().z) z = right.back().z;
    if (!right.empty() && z == right.back().z) right.back().mu = alpha;
    else right.push_back({z, alpha});
  }
  // The peak (a1, 1) closes the left list; drop right-side nodes that collapsed onto it.
  while (!right.empty() && right.back().z <= left.back().z) right.pop_back();
  std::vector<Breakpoint> pts = std::move(left);
  pts.insert(pts.end(), right.rbegin(), right.rend());
  return FuzzyNumber::piecewise_linear(std::move(pts));
}

}  // namespace fuzzyip
