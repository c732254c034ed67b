#pragma once

// Command implementations behind the fuzzyip tool. Each writes data to `out`
// and diagnostics to `err`, and returns the process exit code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyip/genfun.hpp"
#include "fuzzyip/io.hpp"
#include "fuzzyip/ndenum.hpp"
#include "fuzzyip/transform.hpp"

namespace fuzzyip {

enum class Method { Brute, BoxSearch, Genfun };
enum class Format { Text, Json, Csv };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kValidation = 2;
inline constexpr int kGuard = 3;
}  // namespace exit_code

struct RunConfig {
  Method method = Method::BoxSearch;
  std::optional<std::vector<Rational>> ranking;
  std::optional<Integer> bound_L;
  std::uint64_t guard = kDefaultGuardLimit;
  Format format = Format::Text;
  bool stats = false;
  std::optional<unsigned> lr_k;
};

inline std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> out;
  if (c.guard < 1) out.push_back("--guard must be at least 1");
  if (c.lr_k && *c.lr_k < 1) out.push_back("--lr-k must be at least 1");
  if (c.bound_L && *c.bound_L < 1) out.push_back("--bound-L must be at least 1");
  if (c.ranking) {
    for (auto& v : validate_ranking(*c.ranking)) out.push_back("--ranking: " + v);
  }
  return out;
}

/// "1/2,1" -> {1/2, 1}.
inline std::vector<Rational> parse_ranking_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = parse_rational(item);
    if (!r) throw ValidationError("--ranking: \"" + item + "\" is not an integer or p/q");
    out.push_back(*r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Planning: every problem kind becomes a crisp MOILP plus a rule that turns
// its nondominated points back into solutions of the original problem.

struct SolvePlan {
  std::string kind;
  MoilpProblem moilp;            // what gets enumerated (objective rows deduplicated)
  std::size_t raw_objectives = 0;  // before deduplication
  std::optional<Integer> M;      // set when a y variable carries the membership
  std::size_t x_dim = 0;
  std::vector<std::string> notes;
  std::function<std::optional<FuzzySolution>(const NdEntry&)> lift;
};

namespace detail {

inline std::vector<FuzzyNumber> approximate_all(const std::vector<FuzzyNumber>& cs,
                                                const RunConfig& cfg, std::vector<std::string>& notes) {
  std::vector<FuzzyNumber> out;
  bool any = false;
  for (const auto& c : cs) {
    if (c.is_lr()) {
      if (!cfg.lr_k) {
        throw ValidationError("LR coefficients need an explicit polygonal approximation (--lr-k K)");
      }
      out.push_back(approximate_lr(c, *cfg.lr_k));
      any = true;
    } else {
      out.push_back(c);
    }
  }
  if (any) notes.push_back("LR coefficients approximated with k = " + std::to_string(*cfg.lr_k));
  return out;
}

inline std::vector<Rational> choose_ranking(const ParsedProblem& pp, const std::vector<Rational>& given,
                                            const std::vector<FuzzyNumber>& coeffs,
                                            const RunConfig& cfg) {
  if (cfg.ranking) return *cfg.ranking;
  if (pp.ranking_given) return given;
  return default_ranking(coeffs);
}

inline void require_valid(const MoilpProblem& p) {
  if (auto v = validate(p); !v.empty()) throw ValidationError(v.front());
}

}  // namespace detail

inline SolvePlan plan(const ParsedProblem& pp, const RunConfig& cfg) {
  SolvePlan sp;
  sp.kind = kind_name(pp.problem);
  BoxOptions opt{cfg.bound_L, pp.bounds};

  if (const auto* m = std::get_if<MoilpProblem>(&pp.problem)) {
    if (auto v = validate(m->polytope); !v.empty()) throw ValidationError(v.front());
    sp.moilp = make_moilp(m->polytope, m->C, pp.bounds, cfg.bound_L, m->names);
    sp.x_dim = sp.moilp.num_vars();
    sp.raw_objectives = sp.moilp.C.rows();
    sp.lift = [](const NdEntry& e) -> std::optional<FuzzySolution> {
      return FuzzySolution{e.x, RatVector(e.value.begin(), e.value.end()), Rational(1)};
    };
  } else if (const auto* f = std::get_if<FuzzyInequalityProblem>(&pp.problem)) {
    if (auto v = validate(*f); !v.empty()) throw ValidationError(v.front());
    auto sb = fuzzy_ineq_to_biobjective(*f, opt);
    sp.M = sb.M;
    sp.x_dim = sb.x_dim;
    sp.raw_objectives = sb.moilp.C.rows();
    sp.moilp = dedup_objective_rows(std::move(sb.moilp));
    const Integer M = sb.M;
    const std::size_t n = sb.x_dim;
    const auto c = f->objective;
    sp.lift = [M, n, c](const NdEntry& e) -> std::optional<FuzzySolution> {
      if (e.x[n] == 0) return std::nullopt;
      LatticePoint x(e.x.begin(), e.x.begin() + static_cast<std::ptrdiff_t>(n));
      const Integer v = int_dot<std::int64_t>(c, std::span<const std::int64_t>(x));
      return FuzzySolution{std::move(x), {Rational(v)}, Rational(Integer(e.x[n]), M)};
    };
  } else if (const auto* f = std::get_if<FuzzyObjectiveProblem>(&pp.problem)) {
    FuzzyObjectiveProblem q = *f;
    q.coefficients = detail::approximate_all(f->coefficients, cfg, sp.notes);
    q.ranking = detail::choose_ranking(pp, f->ranking, q.coefficients, cfg);
    if (auto v = validate(q); !v.empty()) throw ValidationError(v.front());
    auto cm = fuzzy_obj_to_moilp(q, opt);
    sp.x_dim = q.num_vars();
    sp.raw_objectives = cm.moilp.C.rows();
    sp.moilp = dedup_objective_rows(std::move(cm.moilp));
    sp.lift = [objs = std::vector<std::vector<FuzzyNumber>>{q.coefficients},
               ranking = q.ranking](const NdEntry& e) -> std::optional<FuzzySolution> {
      return FuzzySolution{e.x, objective_cut_values(objs, ranking, e.x), Rational(1)};
    };
  } else {
    CombinedFuzzyProblem q = std::get<CombinedFuzzyProblem>(pp.problem);
    std::vector<FuzzyNumber> all;
    for (auto& row : q.objectives) {
      row = detail::approximate_all(row, cfg, sp.notes);
      all.insert(all.end(), row.begin(), row.end());
    }
    q.ranking = detail::choose_ranking(pp, q.ranking, all, cfg);
    if (auto v = validate(q); !v.empty()) throw ValidationError(v.front());
    auto sb = combined_to_moilp(q, opt);
    sp.M = sb.M;
    sp.x_dim = sb.x_dim;
    sp.raw_objectives = sb.moilp.C.rows();
    sp.moilp = dedup_objective_rows(std::move(sb.moilp));
    const Integer M = sb.M;
    const std::size_t n = sb.x_dim;
    sp.lift = [M, n, objs = q.objectives,
               ranking = q.ranking](const NdEntry& e) -> std::optional<FuzzySolution> {
      if (e.x[n] == 0) return std::nullopt;
      LatticePoint x(e.x.begin(), e.x.begin() + static_cast<std::ptrdiff_t>(n));
      auto values = objective_cut_values(objs, ranking, x);
      return FuzzySolution{std::move(x), std::move(values), Rational(Integer(e.x[n]), M)};
    };
  }
  detail::require_valid(sp.moilp);
  return sp;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string tuple(const LatticePoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

inline std::string tuple(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

inline std::string approx(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(6) << r.to_double();
  return os.str();
}

class SolutionWriter {
 public:
  SolutionWriter(std::ostream& out, Format f, std::size_t n, std::size_t k)
      : out_(out), format_(f), n_(n), k_(k) {}

  void header() {
    if (format_ != Format::Csv) return;
    for (std::size_t j = 0; j < n_; ++j) out_ << "x" << j + 1 << ",";
    for (std::size_t j = 0; j < k_; ++j) out_ << "value" << j + 1 << ",";
    out_ << "membership\n";
  }

  void write(const FuzzySolution& s) {
    ++count_;
    switch (format_) {
      case Format::Text:
        out_ << "x=" << tuple(s.x) << " value=" << tuple(s.objective_values)
             << " membership=" << s.membership.str() << " (≈" << approx(s.membership) << ")\n";
        break;
      case Format::Json:
        out_ << Json{{"x", s.x}, {"value", to_json(s.objective_values)},
                     {"membership", s.membership.str()}}.dump()
             << "\n";
        break;
      case Format::Csv:
        for (auto v : s.x) out_ << v << ",";
        for (const auto& v : s.objective_values) out_ << v.str() << ",";
        out_ << s.membership.str() << "\n";
        break;
    }
    out_.flush();
  }

  std::size_t count() const { return count_; }

 private:
  std::ostream& out_;
  Format format_;
  std::size_t n_, k_;
  std::size_t count_ = 0;
};

}  // namespace detail

struct SolveReport {
  std::vector<FuzzySolution> solutions;
  NdSet nd;  // nondominated set of the enumerated MOILP
  std::optional<DelayStats> stats;
  std::uint64_t crosschecked_boxes = 0;
};

/// Enumerates the plan's MOILP with the configured method, passing every
/// lifted solution to sink as soon as it is known.
inline SolveReport run_plan(const SolvePlan& sp, const RunConfig& cfg,
                            const std::function<void(const FuzzySolution&)>& sink = {}) {
  SolveReport rep;
  auto take = [&](const NdEntry& e) {
    if (auto s = sp.lift(e)) {
      if (sink) sink(*s);
      rep.solutions.push_back(std::move(*s));
    }
  };
  check_guard(sp.moilp.box, cfg.guard);
  switch (cfg.method) {
    case Method::Brute: {
      rep.nd = nd_bruteforce(sp.moilp, cfg.guard);
      for (const auto& e : rep.nd) take(e);
      break;
    }
    case Method::BoxSearch: {
      ReferenceOracle oracle(sp.moilp, cfg.guard);
      auto r = box_search(sp.moilp, oracle, take);
      rep.nd = std::move(r.nd);
      rep.stats = r.stats;
      break;
    }
    case Method::Genfun: {
      GenfunOracle gf(sp.moilp, cfg.guard);
      ReferenceOracle ref(sp.moilp, cfg.guard);
      CrossCheckOracle<GenfunOracle, ReferenceOracle> both(gf, ref);
      auto r = box_search(sp.moilp, both, take);
      rep.nd = std::move(r.nd);
      rep.stats = r.stats;
      rep.crosschecked_boxes = both.checked();
      break;
    }
  }
  return rep;
}

namespace detail {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kValidation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kValidation;
  } catch (const GuardLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::kInternal;
  }
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::BoxSearch: return "boxsearch";
    case Method::Genfun: return "genfun";
  }
  return "?";
}

}  // namespace detail

inline int cmd_solve(const RunConfig& cfg, const ParsedProblem& pp, std::ostream& out,
                     std::ostream& err) {
  return detail::guarded(err, [&] {
    if (auto v = validate(cfg); !v.empty()) throw ValidationError(v.front());
    const SolvePlan sp = plan(pp, cfg);
    for (const auto& n : sp.notes) err << "note: " << n << "\n";

    const std::size_t k = std::holds_alternative<FuzzyInequalityProblem>(pp.problem)
                              ? 1
                              : sp.raw_objectives - (sp.M ? 1 : 0);

    detail::SolutionWriter w(out, cfg.format, sp.x_dim, k);
    w.header();
    const auto rep = run_plan(sp, cfg, [&](const FuzzySolution& s) { w.write(s); });

    if (cfg.format == Format::Text) out << w.count() << (w.count() == 1 ? " solution" : " solutions") << "\n";
    if (cfg.stats) {
      Json st{{"method", detail::method_name(cfg.method)},
              {"search_box", sp.moilp.box.str()},
              {"nondominated", rep.nd.size()},
              {"solutions", rep.solutions.size()}};
      if (sp.M) st["M"] = to_json(*sp.M);
      if (rep.stats) {
        st["oracle_calls"] = rep.stats->oracle_calls;
        st["boxes_visited"] = rep.stats->boxes_visited;
        st["max_delay"] = rep.stats->max_delay;
        st["delay_bound"] = rep.stats->delay_bound;
      }
      if (cfg.method == Method::Genfun) st["crosschecked_boxes"] = rep.crosschecked_boxes;
      switch (cfg.format) {
        case Format::Text:
          out << "stats:\n";
          for (const auto& [key, val] : st.items()) {
            out << "  " << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
          }
          break;
        case Format::Json: out << Json{{"stats", st}}.dump() << "\n"; break;
        case Format::Csv: err << "stats: " << st.dump() << "\n"; break;
      }
    }
    return exit_code::kOk;
  });
}

// ---------------------------------------------------------------------------
// transform

namespace detail {

inline std::string term(const Integer& c, const std::string& var, bool first) {
  if (c == 0) return "";
  std::string s;
  if (first) s = c < 0 ? "-" : "";
  else s = c < 0 ? " - " : " + ";
  const Integer a = abs(c);
  if (a != 1) s += a.str();
  return s + var;
}

inline std::string linear(const IntVector& coeffs, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t j = 0; j < coeffs.size(); ++j) s += term(coeffs[j], names[j], s.empty());
  return s.empty() ? "0" : s;
}

inline std::vector<std::string> names_of(const MoilpProblem& p) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < p.num_vars(); ++j) out.push_back(p.var_name(j));
  return out;
}

/// "y <= 48 - 8x1 + 4x2" when the last variable has coefficient 1 and y_last
/// is set; otherwise "a.x <= b".
inline std::string constraint(const IntVector& a, const Integer& b,
                              const std::vector<std::string>& names, bool y_last) {
  const std::size_t n = a.size();
  if (y_last && n >= 1 && a[n - 1] == 1) {
    std::string s = names[n - 1] + " <= " + b.str();
    for (std::size_t j = 0; j + 1 < n; ++j) s += term(-a[j], names[j], false);
    return s;
  }
  return linear(a, names) + " <= " + b.str();
}

}  // namespace detail

inline int cmd_transform(const RunConfig& cfg, const ParsedProblem& pp, std::ostream& out,
                         std::ostream& err) {
  return detail::guarded(err, [&] {
    if (auto v = validate(cfg); !v.empty()) throw ValidationError(v.front());
    const SolvePlan sp = plan(pp, cfg);
    for (const auto& n : sp.notes) err << "note: " << n << "\n";

    // Undeduplicated rows, with their labels, for display.
    MoilpProblem shown = sp.moilp;
    std::vector<std::string> labels;
    std::vector<Integer> scales;
    auto cut_labels = [&](const std::vector<Rational>& ranking, std::size_t rows) {
      for (const auto& a : ranking) {
        for (std::size_t r = 0; r < rows; ++r) {
          const std::string suffix = rows > 1 ? " row " + std::to_string(r + 1) : "";
          labels.push_back("lower alpha=" + a.str() + suffix);
          labels.push_back("upper alpha=" + a.str() + suffix);
        }
      }
    };
    BoxOptions opt{cfg.bound_L, pp.bounds};
    if (const auto* f = std::get_if<FuzzyInequalityProblem>(&pp.problem)) {
      shown = fuzzy_ineq_to_biobjective(*f, opt).moilp;
      labels = {"c x", "y = M mu(x)"};
    } else if (const auto* f = std::get_if<FuzzyObjectiveProblem>(&pp.problem)) {
      FuzzyObjectiveProblem q = *f;
      std::vector<std::string> ignore;
      q.coefficients = detail::approximate_all(f->coefficients, cfg, ignore);
      q.ranking = detail::choose_ranking(pp, f->ranking, q.coefficients, cfg);
      auto cm = fuzzy_obj_to_moilp(q, opt);
      shown = std::move(cm.moilp);
      scales = std::move(cm.row_scale);
      cut_labels(q.ranking, 1);
    } else if (const auto* f = std::get_if<CombinedFuzzyProblem>(&pp.problem)) {
      CombinedFuzzyProblem q = *f;
      std::vector<FuzzyNumber> all;
      std::vector<std::string> ignore;
      for (auto& row : q.objectives) {
        row = detail::approximate_all(row, cfg, ignore);
        all.insert(all.end(), row.begin(), row.end());
      }
      q.ranking = detail::choose_ranking(pp, f->ranking, all, cfg);
      auto sb = combined_to_moilp(q, opt);
      shown = std::move(sb.moilp);
      scales = std::move(sb.row_scale);
      cut_labels(q.ranking, q.objectives.size());
      labels.push_back("y = M mu(x)");
    }

    if (cfg.format == Format::Json) {
      Json j{{"source_kind", sp.kind}, {"moilp", to_json(shown)}};
      if (sp.M) j["M"] = to_json(*sp.M);
      if (!labels.empty()) j["objective_labels"] = labels;
      if (!scales.empty()) j["row_scale"] = to_json(scales);
      j["distinct_objectives"] = sp.moilp.C.rows();
      out << j.dump() << "\n";
      return exit_code::kOk;
    }

    const auto names = detail::names_of(shown);
    const bool has_y = sp.M.has_value();
    out << "source: " << sp.kind << "\n";
    if (sp.M) out << "M = " << sp.M->str() << "\n";
    out << "maximize\n";
    for (std::size_t i = 0; i < shown.C.rows(); ++i) {
      out << "  f" << i + 1 << " = " << detail::linear(shown.C.row(i), names);
      if (i < labels.size()) out << "    [" << labels[i];
      if (i < scales.size() && scales[i] != 1) out << ", scaled by " << scales[i].str();
      if (i < labels.size()) out << "]";
      out << "\n";
    }
    if (shown.C.rows() != sp.moilp.C.rows()) {
      out << "  (" << sp.moilp.C.rows() << " distinct objective rows after removing duplicates)\n";
    }
    out << "subject to\n";
    for (std::size_t i = 0; i < shown.polytope.num_rows(); ++i) {
      out << "  " << detail::constraint(shown.polytope.A.row(i), shown.polytope.b[i], names, has_y)
          << "\n";
    }
    if (shown.polytope.nonneg) out << "  all variables >= 0, integer\n";
    out << "bounds\n";
    for (std::size_t j = 0; j < shown.num_vars(); ++j) {
      out << "  " << names[j] << " in [" << shown.box[j].lo << ", " << shown.box[j].hi << "]\n";
    }
    return exit_code::kOk;
  });
}

// ---------------------------------------------------------------------------
// plot-data

namespace detail {

struct RatInequality {
  RatVector a;
  Rational b;
};

/// Solves the square system rows . x = rhs; nullopt when singular.
inline std::optional<RatVector> solve_square(std::vector<RatVector> m, RatVector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

/// Vertices of {x : a.x <= b for every row}, n <= 3, by trying every n-subset of rows.
inline std::vector<RatVector> vertices(const std::vector<RatInequality>& rows, std::size_t n) {
  std::vector<RatVector> out;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      std::vector<RatVector> m;
      RatVector rhs;
      for (auto i : pick) {
        m.push_back(rows[i].a);
        rhs.push_back(rows[i].b);
      }
      auto x = solve_square(std::move(m), std::move(rhs));
      if (!x) return;
      for (const auto& r : rows) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += r.a[j] * (*x)[j];
        if (lhs > r.b) return;
      }
      if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(std::move(*x));
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  if (n == 2 && out.size() > 2) {
    // Counterclockwise polygon order around the centroid (ordering only).
    double cx = 0, cy = 0;
    for (const auto& v : out) {
      cx += v[0].to_double();
      cy += v[1].to_double();
    }
    cx /= static_cast<double>(out.size());
    cy /= static_cast<double>(out.size());
    std::sort(out.begin(), out.end(), [&](const RatVector& a, const RatVector& b) {
      return std::atan2(a[1].to_double() - cy, a[0].to_double() - cx) <
             std::atan2(b[1].to_double() - cy, b[0].to_double() - cx);
    });
  } else {
    std::sort(out.begin(), out.end());
  }
  return out;
}

inline std::vector<RatInequality> with_nonneg(std::vector<RatInequality> rows, std::size_t n,
                                              bool nonneg) {
  if (nonneg) {
    for (std::size_t j = 0; j < n; ++j) {
      RatVector e(n, Rational(0));
      e[j] = -1;
      rows.push_back({std::move(e), Rational(0)});
    }
  }
  return rows;
}

inline std::vector<RatInequality> crisp_rows(const CrispPolytope& p) {
  std::vector<RatInequality> rows;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    rows.push_back({RatVector(p.A.row(i).begin(), p.A.row(i).end()), Rational(p.b[i])});
  }
  return with_nonneg(std::move(rows), p.num_vars(), p.nonneg);
}

/// a.x <= b + q/p: where every membership is >= 0.
inline std::vector<RatInequality> level0_rows(const std::vector<FuzzyRow>& fr, std::size_t n) {
  std::vector<RatInequality> rows;
  for (const auto& r : fr) {
    rows.push_back({RatVector(r.coeffs.begin(), r.coeffs.end()),
                    Rational(r.rhs) + Rational(r.q, r.p)});
  }
  return with_nonneg(std::move(rows), n, true);
}

inline void write_header(std::ostream& os, std::size_t n, const char* extra = nullptr) {
  for (std::size_t j = 0; j < n; ++j) os << (j ? "," : "") << "x" << j + 1;
  if (extra) os << "," << extra;
  os << "\n";
}

inline void write_vertices(const std::filesystem::path& file, const std::vector<RatVector>& vs,
                           std::size_t n) {
  std::ofstream os(file);
  if (!os) throw ValidationError("cannot write " + file.string());
  write_header(os, n);
  for (const auto& v : vs) {
    for (std::size_t j = 0; j < n; ++j) os << (j ? "," : "") << v[j].str();
    os << "\n";
  }
}

inline void write_lattice(const std::filesystem::path& file, const CrispPolytope& p,
                          const HyperBox& box, std::uint64_t guard) {
  std::ofstream os(file);
  if (!os) throw ValidationError("cannot write " + file.string());
  write_header(os, p.num_vars());
  for (const auto& x : enumerate_lattice(p, box, guard)) {
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
    os << "\n";
  }
}

/// The x-part of a search box.
inline HyperBox leading_dims(const HyperBox& b, std::size_t n) {
  return HyperBox(std::vector<Interval>(b.intervals().begin(),
                                        b.intervals().begin() + static_cast<std::ptrdiff_t>(n)));
}

}  // namespace detail

/**
 * Writes plot inputs into dir: region_mu1_{vertices,lattice}.csv for the crisp
 * region, region_mu0_{vertices,lattice}.csv for the widest region with
 * nonnegative membership (fuzzy constraints only), and nd.csv with the
 * solutions and their memberships.
 */
inline int cmd_plot_data(const RunConfig& cfg, const ParsedProblem& pp,
                         const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (auto v = validate(cfg); !v.empty()) throw ValidationError(v.front());
    const SolvePlan sp = plan(pp, cfg);
    const std::size_t n = sp.x_dim;
    if (n > 3) {
      throw ValidationError("plot data needs at most 3 variables, problem has " + std::to_string(n));
    }
    std::filesystem::create_directories(dir);
    const HyperBox xbox = detail::leading_dims(sp.moilp.box, n);

    std::vector<std::string> written;
    auto emit_region = [&](const std::string& tag, const CrispPolytope& lattice_poly,
                           const std::vector<detail::RatInequality>& rows, const HyperBox& box) {
      detail::write_vertices(dir / ("region_" + tag + "_vertices.csv"), detail::vertices(rows, n), n);
      detail::write_lattice(dir / ("region_" + tag + "_lattice.csv"), lattice_poly, box, cfg.guard);
      written.push_back("region_" + tag + "_vertices.csv");
      written.push_back("region_" + tag + "_lattice.csv");
    };

    const std::vector<FuzzyRow>* fuzzy_rows = nullptr;
    if (const auto* f = std::get_if<FuzzyInequalityProblem>(&pp.problem)) fuzzy_rows = &f->rows;
    if (const auto* f = std::get_if<CombinedFuzzyProblem>(&pp.problem)) fuzzy_rows = &f->rows;
    if (fuzzy_rows) {
      const auto crisp = crisp_region(*fuzzy_rows, n);
      emit_region("mu1", crisp, detail::crisp_rows(crisp), xbox);
      emit_region("mu0", expanded_region(*fuzzy_rows, n), detail::level0_rows(*fuzzy_rows, n), xbox);
    } else {
      const CrispPolytope& poly = std::holds_alternative<MoilpProblem>(pp.problem)
                                      ? std::get<MoilpProblem>(pp.problem).polytope
                                      : std::get<FuzzyObjectiveProblem>(pp.problem).polytope;
      emit_region("mu1", poly, detail::crisp_rows(poly), xbox);
    }

    const auto rep = run_plan(sp, cfg);
    std::ofstream os(dir / "nd.csv");
    if (!os) throw ValidationError("cannot write " + (dir / "nd.csv").string());
    detail::write_header(os, n, "membership");
    for (const auto& s : rep.solutions) {
      for (std::size_t j = 0; j < n; ++j) os << (j ? "," : "") << s.x[j];
      os << "," << s.membership.str() << "\n";
    }
    written.push_back("nd.csv");
    for (const auto& w : written) out << (dir / w).string() << "\n";
    return exit_code::kOk;
  });
}

// ---------------------------------------------------------------------------
// gf-demo

/// Prints the interval and box generating functions and checks their
/// expansions against the point sets they encode.
inline int cmd_gf_demo(std::int64_t N, const HyperBox& box, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    bool ok = true;
    const auto gi = gf_interval(N);
    const auto si = expand(gi, HyperBox({{-1, N + 1}}));
    const bool interval_ok = si.is_indicator() && si.total() == N + 1 &&
                             si.support_size() == static_cast<std::size_t>(N + 1) &&
                             si.coefficient({0}) == 1 && si.coefficient({N}) == 1;
    ok = ok && interval_ok;
    out << "interval [0," << N << "]\n";
    out << "  f(z) = " << to_string(gi) << "\n";
    out << "  expansion over [-1," << N + 1 << "]: " << si.support_size() << " monomials, "
        << (interval_ok ? "matches" : "DIFFERS FROM") << " the " << N + 1 << " points\n";

    const auto gb = gf_box(box);
    std::vector<Interval> wider;
    for (const auto& d : box.intervals()) wider.push_back({d.lo - 1, d.hi + 1});
    const auto sb = expand(gb, HyperBox(wider));
    bool box_ok = sb.is_indicator();
    for_each_point(box, [&](const LatticePoint& p) { box_ok = box_ok && sb.coefficient(p) == 1; });
    box_ok = box_ok && sb.total() == static_cast<std::int64_t>(box.volume());
    ok = ok && box_ok;
    out << "box " << box.str() << "\n";
    out << "  r(z) = " << to_string(gb) << "\n";
    out << "  " << gb.size() << " terms; expansion: " << sb.total() << " monomials, "
        << (box_ok ? "matches" : "DIFFERS FROM") << " the " << box.volume() << " points\n";
    return ok ? exit_code::kOk : exit_code::kInternal;
  });
}

}  // namespace fuzzyip
