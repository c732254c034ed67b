#pragma once

// Rational generating functions of lattice point sets, realized at desk scale:
// signed terms eps * z^u / prod_j (1 - z^{v_j}) are expanded explicitly over a
// bounded window instead of being manipulated symbolically.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyip/box.hpp"
#include "fuzzyip/errors.hpp"
#include "fuzzyip/model.hpp"
#include "fuzzyip/ndenum.hpp"

namespace fuzzyip {

/// eps * z^u / prod_j (1 - z^{v_j})
class GfTerm {
 public:
  GfTerm(int sign, LatticePoint u, std::vector<LatticePoint> denominators)
      : sign_(sign), u_(std::move(u)), dens_(std::move(denominators)) {
    if (sign != 1 && sign != -1) throw InvalidArgument("GfTerm sign must be +1 or -1");
    for (const auto& v : dens_) {
      if (v.size() != u_.size()) throw InvalidArgument("GfTerm denominator dimension mismatch");
      if (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; })) {
        throw InvalidArgument("GfTerm denominator exponent must be nonzero");
      }
    }
  }

  int sign() const { return sign_; }
  const LatticePoint& numerator() const { return u_; }
  const std::vector<LatticePoint>& denominators() const { return dens_; }
  std::size_t dim() const { return u_.size(); }

  GfTerm negated() const { return GfTerm(-sign_, u_, dens_); }

 private:
  int sign_;
  LatticePoint u_;
  std::vector<LatticePoint> dens_;
};

class GfSum {
 public:
  explicit GfSum(std::size_t dim) : dim_(dim) {}

  void add(GfTerm t) {
    if (t.dim() != dim_) throw InvalidArgument("GfSum: term dimension mismatch");
    terms_.push_back(std::move(t));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<GfTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  friend GfSum operator+(GfSum a, const GfSum& b) {
    if (a.dim_ != b.dim_) throw InvalidArgument("GfSum: dimension mismatch");
    for (const auto& t : b.terms_) a.terms_.push_back(t);
    return a;
  }
  friend GfSum operator-(GfSum a, const GfSum& b) {
    if (a.dim_ != b.dim_) throw InvalidArgument("GfSum: dimension mismatch");
    for (const auto& t : b.terms_) a.terms_.push_back(t.negated());
    return a;
  }

 private:
  std::size_t dim_;
  std::vector<GfTerm> terms_;
};

/**
 * Finitely supported Laurent series restricted to a window box. Stored densely
 * over the window; coefficient() is 0 outside it.
 */
class MonomialSeries {
 public:
  explicit MonomialSeries(HyperBox window, std::uint64_t guard = kDefaultGuardLimit)
      : window_(std::move(window)) {
    check_guard(window_, guard);
    coeffs_.assign(window_.volume(), 0);
  }

  static MonomialSeries indicator(const HyperBox& window, const std::vector<LatticePoint>& points,
                                  std::uint64_t guard = kDefaultGuardLimit) {
    MonomialSeries s(window, guard);
    for (const auto& p : points) s.add(p, 1);
    return s;
  }

  const HyperBox& window() const { return window_; }
  std::size_t dim() const { return window_.dim(); }

  std::int64_t coefficient(const LatticePoint& p) const {
    return window_.contains(p) ? coeffs_[window_.offset(p)] : 0;
  }

  /// Adds c at p; points outside the window are ignored.
  void add(const LatticePoint& p, std::int64_t c) {
    if (window_.contains(p)) coeffs_[window_.offset(p)] += c;
  }

  /// Exponents with nonzero coefficient, lexicographic order.
  std::vector<LatticePoint> support() const {
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out.push_back(window_.at_offset(i));
    }
    return out;
  }

  std::size_t support_size() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](auto c) { return c != 0; }));
  }

  /// Sum of coefficients: the number of encoded points for a 0/1 series.
  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto c : coeffs_) t += c;
    return t;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
  }

  bool is_indicator() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0 || c == 1; });
  }

  const std::vector<std::int64_t>& dense() const { return coeffs_; }
  std::vector<std::int64_t>& dense() { return coeffs_; }

  friend MonomialSeries operator-(MonomialSeries a, const MonomialSeries& b) {
    if (!(a.window_ == b.window_)) throw InvalidArgument("series subtraction: window mismatch");
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    return a;
  }
  friend MonomialSeries operator+(MonomialSeries a, const MonomialSeries& b) {
    if (!(a.window_ == b.window_)) throw InvalidArgument("series addition: window mismatch");
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }

  friend bool operator==(const MonomialSeries&, const MonomialSeries&) = default;

 private:
  HyperBox window_;
  std::vector<std::int64_t> coeffs_;
};

// ---------------------------------------------------------------------------
// Closed forms

/// 1/(1-z) + z^N/(1-z^{-1}), i.e. (1 - z^{N+1})/(1 - z).
inline GfSum gf_interval(std::int64_t N) {
  if (N < 0) throw InvalidArgument("gf_interval needs N >= 0");
  GfSum g(1);
  g.add(GfTerm(+1, {0}, {{1}}));
  g.add(GfTerm(+1, {N}, {{-1}}));
  return g;
}

/// prod_i ( z_i^{lo_i}/(1-z_i) + z_i^{hi_i}/(1-z_i^{-1}) ), expanded into 2^d terms.
inline GfSum gf_box(const HyperBox& box) {
  const std::size_t d = box.dim();
  if (d == 0) throw InvalidArgument("gf_box needs dimension >= 1");
  GfSum g(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    LatticePoint u(d);
    std::vector<LatticePoint> dens;
    for (std::size_t i = 0; i < d; ++i) {
      const bool upper = (mask >> (d - 1 - i)) & 1;
      u[i] = upper ? box[i].hi : box[i].lo;
      LatticePoint v(d, 0);
      v[i] = upper ? -1 : 1;
      dens.push_back(std::move(v));
    }
    g.add(GfTerm(+1, std::move(u), std::move(dens)));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Expansion

namespace detail {

inline bool lex_negative(const LatticePoint& v) {
  for (auto c : v) {
    if (c != 0) return c < 0;
  }
  return false;
}

inline std::size_t leading_index(const LatticePoint& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

/// Expands one term whose denominators all point lexicographically upward.
class TermExpander {
 public:
  TermExpander(const HyperBox& window, std::vector<LatticePoint> dens, int sign,
               MonomialSeries& out, std::uint64_t& budget)
      : window_(window), dens_(std::move(dens)), sign_(sign), out_(out), budget_(budget) {
    const std::size_t m = dens_.size(), d = window.dim();
    // suffix sign summaries: can coordinate i still move down / up using dens_[j..]?
    can_decrease_.assign(m + 1, std::vector<bool>(d, false));
    can_increase_.assign(m + 1, std::vector<bool>(d, false));
    for (std::size_t j = m; j-- > 0;) {
      for (std::size_t i = 0; i < d; ++i) {
        can_decrease_[j][i] = can_decrease_[j + 1][i] || dens_[j][i] < 0;
        can_increase_[j][i] = can_increase_[j + 1][i] || dens_[j][i] > 0;
      }
    }
  }

  void run(LatticePoint start) { visit(0, start); }

 private:
  bool reachable(std::size_t j, const LatticePoint& p) const {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > window_[i].hi && !can_decrease_[j][i]) return false;
      if (p[i] < window_[i].lo && !can_increase_[j][i]) return false;
    }
    return true;
  }

  void visit(std::size_t j, LatticePoint& p) {
    if (j == dens_.size()) {
      if (budget_ == 0) throw GuardLimitExceeded("series expansion exceeded its monomial budget");
      --budget_;
      out_.add(p, sign_);
      return;
    }
    const auto& v = dens_[j];
    LatticePoint cur = p;
    // Leading coordinate of v grows each step and no later vector lowers it,
    // so this loop leaves the window after finitely many steps.
    while (reachable(j, cur)) {
      visit(j + 1, cur);
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += v[i];
    }
  }

  const HyperBox& window_;
  std::vector<LatticePoint> dens_;
  int sign_;
  MonomialSeries& out_;
  std::uint64_t& budget_;
  std::vector<std::vector<bool>> can_decrease_, can_increase_;
};

}  // namespace detail

/**
 * Coefficients of g restricted to window.
 *
 * Every term is expanded in one common direction: a denominator z^v with v
 * lexicographically negative is rewritten as 1/(1-z^v) = -z^{-v}/(1-z^{-v})
 * first, so the term-by-term Laurent expansions add up to the expansion of the
 * rational function itself (a polynomial for a polytope's generating function).
 */
inline MonomialSeries expand(const GfSum& g, const HyperBox& window,
                             std::uint64_t guard = kDefaultGuardLimit) {
  if (g.dim() != window.dim()) throw InvalidArgument("expand: window dimension mismatch");
  MonomialSeries out(window, guard);
  std::uint64_t budget = guard;
  for (const auto& t : g.terms()) {
    int sign = t.sign();
    LatticePoint u = t.numerator();
    std::vector<LatticePoint> dens;
    for (const auto& v : t.denominators()) {
      if (detail::lex_negative(v)) {
        sign = -sign;
        LatticePoint w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          u[i] -= v[i];
          w[i] = -v[i];
        }
        dens.push_back(std::move(w));
      } else {
        dens.push_back(v);
      }
    }
    std::stable_sort(dens.begin(), dens.end(), [](const auto& a, const auto& b) {
      return detail::leading_index(a) < detail::leading_index(b);
    });
    detail::TermExpander(window, std::move(dens), sign, out, budget).run(std::move(u));
  }
  return out;
}

/// Coefficientwise product over the intersection of the two windows.
inline MonomialSeries hadamard(const MonomialSeries& a, const MonomialSeries& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("hadamard: dimension mismatch");
  const auto common = a.window().intersect(b.window());
  if (!common) {
    // Disjoint windows: an empty product, represented on a's window.
    MonomialSeries z(a.window());
    return z;
  }
  MonomialSeries out(*common);
  if (a.window() == *common && b.window() == *common) {
    for (std::size_t i = 0; i < out.dense().size(); ++i) out.dense()[i] = a.dense()[i] * b.dense()[i];
    return out;
  }
  for_each_point(*common, [&](const LatticePoint& p) {
    const auto c = a.coefficient(p) * b.coefficient(p);
    if (c != 0) out.add(p, c);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Nondominated-set pipeline

/// Indicator of the feasible lattice points in window.
inline MonomialSeries feasible_series(const MoilpProblem& p, const HyperBox& window,
                                      std::uint64_t guard = kDefaultGuardLimit) {
  return MonomialSeries::indicator(window, enumerate_lattice(p.polytope, window, guard), guard);
}

inline MonomialSeries feasible_series(const MoilpProblem& p) { return feasible_series(p, p.box); }

/**
 * Indicator of the feasible points v for which some feasible u has
 * C u >= C v componentwise and sum(C u - C v) >= 1. Needs integral objective
 * values; computed by a pairwise scan over the feasible set.
 */
inline MonomialSeries dominated_series(const MoilpProblem& p, const HyperBox& window,
                                       std::uint64_t guard = kDefaultGuardLimit) {
  const auto pts = enumerate_lattice(p.polytope, window, guard);
  std::vector<IntVector> vals;
  vals.reserve(pts.size());
  for (const auto& x : pts) vals.push_back(objective_values(p, x));
  MonomialSeries out(window, guard);
  for (std::size_t v = 0; v < pts.size(); ++v) {
    for (std::size_t u = 0; u < pts.size(); ++u) {
      bool geq = true;
      Integer gap = 0;
      for (std::size_t k = 0; k < vals[v].size() && geq; ++k) {
        const Integer diff = vals[u][k] - vals[v][k];
        if (diff < 0) geq = false;
        gap += diff;
      }
      if (geq && gap >= 1) {
        out.add(pts[v], 1);
        break;
      }
    }
  }
  return out;
}

inline MonomialSeries dominated_series(const MoilpProblem& p) { return dominated_series(p, p.box); }

/// Feasible minus dominated: the indicator of the nondominated set.
inline MonomialSeries nd_series(const MoilpProblem& p, const HyperBox& window,
                                std::uint64_t guard = kDefaultGuardLimit) {
  auto h = feasible_series(p, window, guard) - dominated_series(p, window, guard);
  for (auto c : h.dense()) {
    if (c < 0 || c > 1) {
      throw OracleInconsistency("nondominated series has coefficient " + std::to_string(c));
    }
  }
  return h;
}

inline MonomialSeries nd_series(const MoilpProblem& p) { return nd_series(p, p.box); }

/// Count oracle that realizes count(box) as the total of
/// hadamard(expand(gf_box(box)), nd_series).
class GenfunOracle {
 public:
  explicit GenfunOracle(const MoilpProblem& p, std::uint64_t guard = kDefaultGuardLimit)
      : guard_(guard), nd_(nd_series(p, p.box, guard)) {}

  std::size_t count_in_box(const HyperBox& box) const {
    const auto box_series = expand(gf_box(box), nd_.window(), guard_);
    return static_cast<std::size_t>(hadamard(box_series, nd_).total());
  }

  const MonomialSeries& series() const { return nd_; }

 private:
  std::uint64_t guard_;
  MonomialSeries nd_;
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string monomial(const LatticePoint& e, const std::vector<std::string>& vars) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    os << vars[i];
    if (e[i] != 1) os << "^" << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

inline std::vector<std::string> default_vars(std::size_t d) {
  if (d == 1) return {"z"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back("z" + std::to_string(i + 1));
  return v;
}

}  // namespace detail

/// e.g. "z^5/(1 - z^-1)"; variables default to z (d = 1) or z1..zd.
inline std::string to_string(const GfTerm& t, const std::vector<std::string>& vars = {}) {
  const auto names = vars.empty() ? detail::default_vars(t.dim()) : vars;
  std::ostringstream os;
  os << detail::monomial(t.numerator(), names) << "/";
  const bool wrap = t.denominators().size() > 1;
  if (wrap) os << "(";
  for (std::size_t j = 0; j < t.denominators().size(); ++j) {
    if (j) os << "*";
    os << "(1 - " << detail::monomial(t.denominators()[j], names) << ")";
  }
  if (wrap) os << ")";
  return os.str();
}

inline std::string to_string(const GfSum& g, const std::vector<std::string>& vars = {}) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.terms().size(); ++i) {
    const auto& t = g.terms()[i];
    if (i == 0) os << (t.sign() < 0 ? "-" : "");
    else os << (t.sign() < 0 ? " - " : " + ");
    os << to_string(t, vars);
  }
  return os.str();
}

}  // namespace fuzzyip
