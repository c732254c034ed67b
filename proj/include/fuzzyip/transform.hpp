#pragma once

// Fuzzy problems to crisp multiobjective integer programs: linear
// memberships scaled by M into an auxiliary variable y, and fuzzy objective
// coefficients replaced by alpha-cut endpoint rows.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyip/box.hpp"
#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"
#include "fuzzyip/fuzzy.hpp"
#include "fuzzyip/model.hpp"
#include "fuzzyip/ndenum.hpp"

namespace fuzzyip {

/// mu(x) = clamp(1 + slope * (b - a.x), 0, 1).
struct LinearMembership {
  IntVector a;
  Integer b;
  Rational slope;

  /// Constant term of the linear piece: 1 + slope * b.
  Rational constant() const { return Rational(1) + slope * Rational(b); }

  /// Coefficients of the linear piece: -slope * a_j.
  RatVector coefficients() const {
    RatVector out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(-(slope * Rational(v)));
    return out;
  }

  /// Value of the linear piece, unclamped.
  Rational linear_value(const LatticePoint& x) const {
    return constant() + rat_dot<std::int64_t>(coefficients(), std::span<const std::int64_t>(x));
  }

  Rational value(const LatticePoint& x) const {
    const Rational v = linear_value(x);
    if (v <= 0) return Rational(0);
    if (v >= 1) return Rational(1);
    return v;
  }

  friend bool operator==(const LinearMembership&, const LinearMembership&) = default;
};

inline std::vector<LinearMembership> build_memberships(const std::vector<FuzzyRow>& rows) {
  std::vector<LinearMembership> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.p < 1 || r.q < 1) throw InvalidArgument("slope must be positive (p >= 1)");
    out.push_back({r.coeffs, r.rhs, Rational(r.p, r.q)});
  }
  return out;
}

/// min_i mu_i(x); 1 for an empty list.
inline Rational membership_value(const std::vector<LinearMembership>& ms, const LatticePoint& x) {
  Rational m(1);
  for (const auto& mu : ms) m = min(m, mu.value(x));
  return m;
}

/// lcm of the denominators of every coefficient and constant of the linear pieces.
inline Integer compute_scale_M(const std::vector<LinearMembership>& ms) {
  Integer M = 1;
  for (const auto& mu : ms) {
    M = lcm(M, mu.constant().den());
    for (const auto& c : mu.coefficients()) M = lcm(M, c.den());
  }
  return M;
}

/// Optional search-box controls shared by the transforms.
struct BoxOptions {
  std::optional<Integer> l_override;
  std::optional<HyperBox> user_bounds;  // over the transformed variables
};

/// A MOILP over (x, y) with y = M * membership.
struct ScaledBiobjective {
  MoilpProblem moilp;
  Integer M;
  std::size_t x_dim = 0;
  std::vector<LinearMembership> memberships;
  std::vector<Integer> row_scale;  // per objective row, excluding the y row
};

namespace detail {

/// Rows -M*coeff . x + y <= M*constant for each membership, then y <= M.
inline CrispPolytope scaled_membership_polytope(const std::vector<LinearMembership>& ms,
                                                const Integer& M, std::size_t n) {
  std::vector<IntVector> A;
  IntVector b;
  const Rational Mr(M);
  for (const auto& mu : ms) {
    IntVector row;
    for (const auto& c : mu.coefficients()) {
      const Rational v = -(Mr * c);
      row.push_back(v.num());  // integral by choice of M
    }
    row.push_back(1);
    A.push_back(std::move(row));
    b.push_back((Mr * mu.constant()).num());
  }
  IntVector ybound(n + 1, 0);
  ybound[n] = 1;
  A.push_back(std::move(ybound));
  b.push_back(M);
  return CrispPolytope{IntMatrix(n + 1, std::move(A)), std::move(b), true};
}

/// L-box of the polytope with y pinned to [0, M], then the user bounds.
inline HyperBox scaled_box(const CrispPolytope& poly, const Integer& M, const BoxOptions& opt) {
  HyperBox box = bounding_box_L(poly, opt.l_override);
  const std::size_t y = poly.num_vars() - 1;
  box = box.with(y, {0, to_coordinate(M)});
  if (opt.user_bounds) {
    auto cut = box.intersect(*opt.user_bounds);
    if (!cut) throw InvalidArgument("user bounds do not meet the search box");
    box = *cut;
  }
  return box;
}

inline std::vector<std::string> xy_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(j + 1));
  names.push_back("y");
  return names;
}

inline void require_linear_coefficients(const std::vector<FuzzyNumber>& coeffs) {
  for (const auto& c : coeffs) {
    if (c.is_lr()) {
      throw InvalidArgument("LR coefficient must be approximated first (approximate_lr / --lr-k)");
    }
  }
}

/// Lower and upper alpha-cut endpoint vectors of coeffs at alpha.
inline std::pair<RatVector, RatVector> cut_vectors(const std::vector<FuzzyNumber>& coeffs,
                                                   const Rational& alpha) {
  RatVector lo, hi;
  for (const auto& c : coeffs) {
    const auto cut = alpha_cut(c, alpha);
    lo.push_back(cut.lo);
    hi.push_back(cut.hi);
  }
  return {std::move(lo), std::move(hi)};
}

/// Scales a rational row to integers by the lcm of its denominators.
inline IntVector clear_denominators(const RatVector& row, Integer& scale) {
  scale = lcm_denominators(std::span<const Rational>(row));
  IntVector out;
  out.reserve(row.size());
  for (const auto& v : row) out.push_back((v * Rational(scale)).num());
  return out;
}

/// Cut rows for every objective row and ranking level: for each level, for
/// each objective row, lower then upper endpoints.
inline std::vector<RatVector> cut_rows(const std::vector<std::vector<FuzzyNumber>>& objectives,
                                       const std::vector<Rational>& ranking) {
  std::vector<RatVector> rows;
  for (const auto& alpha : ranking) {
    for (const auto& obj : objectives) {
      auto [lo, hi] = cut_vectors(obj, alpha);
      rows.push_back(std::move(lo));
      rows.push_back(std::move(hi));
    }
  }
  return rows;
}

}  // namespace detail

inline ScaledBiobjective fuzzy_ineq_to_biobjective(const FuzzyInequalityProblem& p,
                                                   const BoxOptions& opt = {}) {
  if (auto v = validate(p); !v.empty()) throw ValidationError(v.front());
  const std::size_t n = p.num_vars();
  auto ms = build_memberships(p.rows);
  const Integer M = compute_scale_M(ms);
  auto poly = detail::scaled_membership_polytope(ms, M, n);

  std::vector<IntVector> C(2, IntVector(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j) C[0][j] = p.objective[j];
  C[1][n] = 1;

  auto box = detail::scaled_box(poly, M, opt);
  MoilpProblem moilp{std::move(poly), IntMatrix(n + 1, std::move(C)), std::move(box),
                     detail::xy_names(n)};
  return ScaledBiobjective{std::move(moilp), M, n, std::move(ms), {Integer(1)}};
}

/// The 2k cut-row MOILP over the original polytope, with the integer scale
/// applied to each row.
struct CutMoilp {
  MoilpProblem moilp;
  std::vector<Integer> row_scale;
};

inline CutMoilp fuzzy_obj_to_moilp(const FuzzyObjectiveProblem& p, const BoxOptions& opt = {}) {
  detail::require_linear_coefficients(p.coefficients);
  if (auto v = validate(p); !v.empty()) throw ValidationError(v.front());
  const std::size_t n = p.num_vars();
  std::vector<IntVector> C;
  std::vector<Integer> scales;
  for (const auto& row : detail::cut_rows({p.coefficients}, p.ranking)) {
    Integer s;
    C.push_back(detail::clear_denominators(row, s));
    scales.push_back(s);
  }
  auto moilp = make_moilp(p.polytope, IntMatrix(n, std::move(C)), opt.user_bounds, opt.l_override);
  return CutMoilp{std::move(moilp), std::move(scales)};
}

inline ScaledBiobjective combined_to_moilp(const CombinedFuzzyProblem& p,
                                           const BoxOptions& opt = {}) {
  for (const auto& obj : p.objectives) detail::require_linear_coefficients(obj);
  if (auto v = validate(p); !v.empty()) throw ValidationError(v.front());
  const std::size_t n = p.num_vars();
  auto ms = build_memberships(p.rows);
  const Integer M = compute_scale_M(ms);
  auto poly = detail::scaled_membership_polytope(ms, M, n);

  std::vector<IntVector> C;
  std::vector<Integer> scales;
  for (const auto& row : detail::cut_rows(p.objectives, p.ranking)) {
    Integer s;
    auto r = detail::clear_denominators(row, s);
    r.push_back(0);
    C.push_back(std::move(r));
    scales.push_back(s);
  }
  IntVector yrow(n + 1, 0);
  yrow[n] = 1;
  C.push_back(std::move(yrow));

  auto box = detail::scaled_box(poly, M, opt);
  MoilpProblem moilp{std::move(poly), IntMatrix(n + 1, std::move(C)), std::move(box),
                     detail::xy_names(n)};
  return ScaledBiobjective{std::move(moilp), M, n, std::move(ms), std::move(scales)};
}

/// Drops repeated objective rows, keeping first occurrences in order.
inline MoilpProblem dedup_objective_rows(MoilpProblem p) {
  std::vector<IntVector> rows;
  for (const auto& r : p.C) {
    if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
  }
  p.C = IntMatrix(p.C.cols(), std::move(rows));
  return p;
}

/// Unscaled alpha-cut endpoint values, in the same row order as the transforms.
inline RatVector objective_cut_values(const std::vector<std::vector<FuzzyNumber>>& objectives,
                                      const std::vector<Rational>& ranking, const LatticePoint& x) {
  RatVector out;
  for (const auto& row : detail::cut_rows(objectives, ranking)) {
    out.push_back(rat_dot<std::int64_t>(row, std::span<const std::int64_t>(x)));
  }
  return out;
}

/**
 * Maps nondominated (x, y) solutions to (x, y/M). Entries with y = 0 are
 * dropped. objective_values holds the value vector without the y component.
 */
inline std::vector<FuzzySolution> solution_lift(const NdSet& nd, const Integer& M,
                                                std::size_t x_dim) {
  std::vector<FuzzySolution> out;
  for (const auto& e : nd) {
    if (e.x.size() != x_dim + 1) throw InvalidArgument("solution_lift: point lacks a y component");
    const std::int64_t y = e.x[x_dim];
    if (y == 0) continue;
    FuzzySolution s;
    s.x.assign(e.x.begin(), e.x.begin() + static_cast<std::ptrdiff_t>(x_dim));
    for (std::size_t k = 0; k + 1 < e.value.size(); ++k) s.objective_values.emplace_back(e.value[k]);
    s.membership = Rational(Integer(y), M);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fuzzyip
