#pragma once

// Problem representations: crisp polytopes, multiobjective integer programs
// and the fuzzy problem classes, with validation and the L-box bound.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyip/box.hpp"
#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"
#include "fuzzyip/feasibility.hpp"
#include "fuzzyip/fuzzy.hpp"

namespace fuzzyip {

/// {x : A x <= b}, plus x >= 0 when nonneg is set.
struct CrispPolytope {
  IntMatrix A;
  IntVector b;
  bool nonneg = true;

  std::size_t num_vars() const { return A.cols(); }
  std::size_t num_rows() const { return A.rows(); }

  template <class IntLike>
  bool contains(std::span<const IntLike> x) const {
    if (nonneg) {
      for (const auto& v : x) {
        if (v < 0) return false;
      }
    }
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (int_dot<IntLike>(A.row(i), x) > b[i]) return false;
    }
    return true;
  }

  bool contains(const LatticePoint& x) const {
    return contains<std::int64_t>(std::span<const std::int64_t>(x));
  }

  friend bool operator==(const CrispPolytope&, const CrispPolytope&) = default;
};

/// max C x over the lattice points of a polytope; every row of C is an objective.
struct MoilpProblem {
  CrispPolytope polytope;
  IntMatrix C;
  HyperBox box;
  std::vector<std::string> names;  // optional variable labels

  std::size_t num_vars() const { return polytope.num_vars(); }
  std::size_t num_objectives() const { return C.rows(); }

  std::string var_name(std::size_t j) const {
    return j < names.size() ? names[j] : "x" + std::to_string(j + 1);
  }

  friend bool operator==(const MoilpProblem&, const MoilpProblem&) = default;
};

/// a . x <~ b with linear tolerance of slope p/q (violation q/p maps to membership 0).
struct FuzzyRow {
  IntVector coeffs;
  Integer rhs;
  Integer p = 1;
  Integer q = 1;

  friend bool operator==(const FuzzyRow&, const FuzzyRow&) = default;
};

/// max c x subject to fuzzy rows a_i x <~ b_i, x >= 0 integer.
struct FuzzyInequalityProblem {
  IntVector objective;
  std::vector<FuzzyRow> rows;

  std::size_t num_vars() const { return objective.size(); }
  friend bool operator==(const FuzzyInequalityProblem&, const FuzzyInequalityProblem&) = default;
};

/// max c~ x over a crisp polytope, compared through the ranking's alpha-cuts.
struct FuzzyObjectiveProblem {
  CrispPolytope polytope;
  std::vector<FuzzyNumber> coefficients;
  std::vector<Rational> ranking;  // validated by validate(); see RankingSystem

  std::size_t num_vars() const { return polytope.num_vars(); }
  friend bool operator==(const FuzzyObjectiveProblem&, const FuzzyObjectiveProblem&) = default;
};

/// max C~ x subject to fuzzy rows: fuzzy objective matrix and fuzzy constraints.
struct CombinedFuzzyProblem {
  std::vector<std::vector<FuzzyNumber>> objectives;
  std::vector<FuzzyRow> rows;
  std::vector<Rational> ranking;

  std::size_t num_vars() const { return rows.empty() ? 0 : rows.front().coeffs.size(); }
  friend bool operator==(const CombinedFuzzyProblem&, const CombinedFuzzyProblem&) = default;
};

/// An integer point, its objective value(s) and its membership degree in (0,1].
struct FuzzySolution {
  LatticePoint x;
  RatVector objective_values;
  Rational membership;

  friend bool operator==(const FuzzySolution&, const FuzzySolution&) = default;
};

// ---------------------------------------------------------------------------
// L-box

/// L = max(U, ceil(1/l)) with U, l the largest and smallest absolute values
/// of the nonzero entries of (A | b).
inline Integer bound_L(const CrispPolytope& p) {
  std::optional<Integer> largest, smallest;
  auto visit = [&](const Integer& v) {
    if (v == 0) return;
    const Integer a = abs(v);
    if (!largest || a > *largest) largest = a;
    if (!smallest || a < *smallest) smallest = a;
  };
  for (const auto& row : p.A) {
    for (const auto& v : row) visit(v);
  }
  for (const auto& v : p.b) visit(v);
  if (!largest) throw InvalidArgument("bounding box: constraint data is all zero");
  const Integer inv_l = Rational(Integer(1), *smallest).ceil();
  return *largest > inv_l ? *largest : inv_l;
}

inline std::int64_t to_coordinate(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
      v < std::numeric_limits<std::int64_t>::min() / 4) {
    throw GuardLimitExceeded("coordinate bound " + v.str() + " exceeds 64-bit lattice range");
  }
  return v.convert_to<std::int64_t>();
}

/// [0, L]^n, or [-L, L]^n when the polytope does not imply x >= 0.
inline HyperBox bounding_box_L(const CrispPolytope& p, std::optional<Integer> l_override = {}) {
  if (p.num_vars() == 0) throw InvalidArgument("bounding box: polytope has no variables");
  const std::int64_t L = to_coordinate(l_override ? *l_override : bound_L(p));
  return HyperBox::cube(p.num_vars(), p.nonneg ? 0 : -L, L);
}

/// Assembles a MOILP whose search box is the L-box, intersected with any
/// user-supplied per-variable bounds.
inline MoilpProblem make_moilp(CrispPolytope polytope, IntMatrix C,
                               std::optional<HyperBox> user_bounds = {},
                               std::optional<Integer> l_override = {},
                               std::vector<std::string> names = {}) {
  HyperBox box = bounding_box_L(polytope, l_override);
  if (user_bounds) {
    auto cut = box.intersect(*user_bounds);
    if (!cut) throw InvalidArgument("user bounds do not meet the L-box");
    box = *cut;
  }
  return MoilpProblem{std::move(polytope), std::move(C), std::move(box), std::move(names)};
}

inline HyperBox bounding_box_L(const MoilpProblem& p) { return p.box; }

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline std::vector<LinearInequality> polytope_rows(const CrispPolytope& p) {
  std::vector<LinearInequality> rows;
  const std::size_t n = p.num_vars();
  for (std::size_t i = 0; i < p.num_rows(); ++i) rows.push_back({p.A.row(i), p.b[i]});
  if (p.nonneg) {
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, 0);
      e[j] = -1;
      rows.push_back({std::move(e), 0});
    }
  }
  return rows;
}

inline IntVector unit(std::size_t n, std::size_t j, long long sign) {
  IntVector e(n, 0);
  e[j] = sign;
  return e;
}

}  // namespace detail

/// Checks that every real point of the polytope lies inside box. A
/// continuous witness outside the box is a violation even when it holds no
/// lattice point, so the check is conservative.
inline std::vector<std::string> check_box_contains_polytope(const CrispPolytope& p,
                                                            const HyperBox& box) {
  std::vector<std::string> out;
  const std::size_t n = p.num_vars();
  const auto base = detail::polytope_rows(p);
  for (std::size_t j = 0; j < n; ++j) {
    for (int side : {+1, -1}) {
      if (side < 0 && p.nonneg && box[j].lo <= 0) continue;
      auto rows = base;
      // side +1: x_j >= hi + 1  <=>  -x_j <= -(hi+1)
      // side -1: x_j <= lo - 1
      if (side > 0) rows.push_back({detail::unit(n, j, -1), Integer(-(box[j].hi + 1))});
      else rows.push_back({detail::unit(n, j, 1), Integer(box[j].lo - 1)});
      const auto feasible = real_feasible(std::move(rows), n);
      if (!feasible) {
        out.push_back("could not certify that variable " + std::to_string(j + 1) +
                      " stays inside the search box (elimination limit)");
      } else if (*feasible) {
        out.push_back("feasible region leaves the search box " + box.str() + " along variable " +
                      std::to_string(j + 1) + (side > 0 ? " (above)" : " (below)") +
                      "; the region is unbounded or needs a larger --bound-L");
      }
    }
  }
  return out;
}

/// Violations if the polytope's recession cone is nontrivial.
inline std::vector<std::string> check_bounded(const CrispPolytope& p) {
  std::vector<std::string> out;
  const std::size_t n = p.num_vars();
  auto cone = detail::polytope_rows(p);
  for (auto& r : cone) r.rhs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int side : {+1, -1}) {
      if (side < 0 && p.nonneg) continue;
      auto rows = cone;
      rows.push_back({detail::unit(n, j, -side), Integer(-1)});
      const auto feasible = real_feasible(std::move(rows), n);
      if (!feasible || *feasible) {
        out.push_back("feasible region is unbounded along variable " + std::to_string(j + 1));
        break;
      }
    }
  }
  return out;
}

inline std::vector<std::string> validate(const CrispPolytope& p) {
  std::vector<std::string> out;
  if (p.num_vars() == 0) out.push_back("polytope needs at least one variable");
  if (p.b.size() != p.A.rows()) out.push_back("right-hand side length differs from row count");
  return out;
}

inline std::vector<std::string> validate(const MoilpProblem& p) {
  auto out = validate(p.polytope);
  if (!out.empty()) return out;
  if (p.C.rows() == 0) out.push_back("at least one objective row is required");
  if (p.C.cols() != p.num_vars()) out.push_back("objective column count differs from variable count");
  if (p.box.dim() != p.num_vars()) out.push_back("search box dimension differs from variable count");
  if (!out.empty()) return out;
  for (auto& v : check_box_contains_polytope(p.polytope, p.box)) out.push_back(std::move(v));
  return out;
}

inline std::vector<std::string> validate_ranking(const std::vector<Rational>& levels) {
  try {
    RankingSystem r(levels);
  } catch (const InvalidArgument& e) {
    return {e.what()};
  }
  return {};
}

inline std::vector<std::string> validate_rows(const std::vector<FuzzyRow>& rows, std::size_t n) {
  std::vector<std::string> out;
  if (rows.empty()) out.push_back("at least one fuzzy row is required");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto tag = "row " + std::to_string(i + 1) + ": ";
    if (rows[i].coeffs.size() != n) out.push_back(tag + "coefficient count differs from variable count");
    if (rows[i].p < 1) out.push_back(tag + "slope must be positive (p >= 1)");
    if (rows[i].q < 1) out.push_back(tag + "tolerance must be positive (q >= 1)");
  }
  return out;
}

/// The region where every fuzzy row has positive or zero membership:
/// a_i x <= b_i + q_i/p_i, floored for integer x.
inline CrispPolytope expanded_region(const std::vector<FuzzyRow>& rows, std::size_t n) {
  std::vector<IntVector> A;
  IntVector b;
  for (const auto& r : rows) {
    A.push_back(r.coeffs);
    b.push_back(floor_div(r.rhs * r.p + r.q, r.p));
  }
  return CrispPolytope{IntMatrix(n, std::move(A)), std::move(b), true};
}

/// The region where every fuzzy row has membership 1: a_i x <= b_i.
inline CrispPolytope crisp_region(const std::vector<FuzzyRow>& rows, std::size_t n) {
  std::vector<IntVector> A;
  IntVector b;
  for (const auto& r : rows) {
    A.push_back(r.coeffs);
    b.push_back(r.rhs);
  }
  return CrispPolytope{IntMatrix(n, std::move(A)), std::move(b), true};
}

inline std::vector<std::string> validate(const FuzzyInequalityProblem& p) {
  std::vector<std::string> out;
  if (p.objective.empty()) out.push_back("objective needs at least one variable");
  for (auto& v : validate_rows(p.rows, p.num_vars())) out.push_back(std::move(v));
  if (!out.empty()) return out;
  return check_bounded(expanded_region(p.rows, p.num_vars()));
}

inline std::vector<std::string> validate(const FuzzyObjectiveProblem& p) {
  auto out = validate(p.polytope);
  if (p.coefficients.size() != p.num_vars()) {
    out.push_back("objective coefficient count differs from variable count");
  }
  for (auto& v : validate_ranking(p.ranking)) out.push_back(std::move(v));
  if (!out.empty()) return out;
  return check_bounded(p.polytope);
}

inline std::vector<std::string> validate(const CombinedFuzzyProblem& p) {
  std::vector<std::string> out = validate_rows(p.rows, p.num_vars());
  if (p.objectives.empty()) out.push_back("at least one objective row is required");
  for (std::size_t j = 0; j < p.objectives.size(); ++j) {
    if (p.objectives[j].size() != p.num_vars()) {
      out.push_back("objective row " + std::to_string(j + 1) +
                    ": coefficient count differs from variable count");
    }
  }
  for (auto& v : validate_ranking(p.ranking)) out.push_back(std::move(v));
  if (!out.empty()) return out;
  return check_bounded(expanded_region(p.rows, p.num_vars()));
}

/// Ranking used when a problem file does not give one: {1/2, 1} plus every
/// interior vertex level of the piecewise-linear coefficients.
inline std::vector<Rational> default_ranking(const std::vector<FuzzyNumber>& coeffs) {
  std::vector<Rational> levels{Rational(Integer(1), Integer(2)), Rational(1)};
  for (const auto& c : coeffs) {
    for (auto& v : c.vertex_levels()) levels.push_back(std::move(v));
  }
  return RankingSystem::from_unsorted(std::move(levels)).levels();
}

}  // namespace fuzzyip
