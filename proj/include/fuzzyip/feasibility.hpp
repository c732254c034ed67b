#pragma once

// Exact feasibility of small rational inequality systems by Fourier-Motzkin
// elimination. Used to certify that a feasible region is bounded and fits its
// search box; only meant for the handful of variables a lattice scan can
// handle anyway.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "fuzzyip/exactmath.hpp"

namespace fuzzyip {

/// One inequality coeffs . x <= rhs over the integers (scaled rationals).
struct LinearInequality {
  IntVector coeffs;
  Integer rhs;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
  friend bool operator<(const LinearInequality& a, const LinearInequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  }
};

namespace detail {

inline LinearInequality normalized(LinearInequality row) {
  Integer g = abs(row.rhs);
  for (const auto& c : row.coeffs) g = gcd(g, c);
  if (g > 1) {
    for (auto& c : row.coeffs) c /= g;
    row.rhs /= g;
  }
  return row;
}

}  // namespace detail

/// Default cap on intermediate rows before elimination gives up.
inline constexpr std::size_t kFourierMotzkinRowLimit = 50000;

/**
 * Decides whether {x in R^n : row.coeffs . x <= row.rhs for every row} is
 * nonempty. Returns std::nullopt when the intermediate system exceeds
 * row_limit rows.
 */
inline std::optional<bool> real_feasible(std::vector<LinearInequality> rows, std::size_t n,
                                         std::size_t row_limit = kFourierMotzkinRowLimit) {
  for (std::size_t var = 0; var < n; ++var) {
    std::vector<LinearInequality> pos, neg;
    std::set<LinearInequality> next;
    for (auto& r : rows) {
      const auto& a = r.coeffs[var];
      if (a > 0) pos.push_back(std::move(r));
      else if (a < 0) neg.push_back(std::move(r));
      else next.insert(detail::normalized(std::move(r)));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Integer mp = -q.coeffs[var];
        const Integer mq = p.coeffs[var];
        LinearInequality combo;
        combo.coeffs.resize(n);
        for (std::size_t j = 0; j < n; ++j) combo.coeffs[j] = p.coeffs[j] * mp + q.coeffs[j] * mq;
        combo.rhs = p.rhs * mp + q.rhs * mq;
        next.insert(detail::normalized(std::move(combo)));
        if (next.size() > row_limit) return std::nullopt;
      }
    }
    rows.assign(next.begin(), next.end());
  }
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.rhs >= 0; });
}

}  // namespace fuzzyip
