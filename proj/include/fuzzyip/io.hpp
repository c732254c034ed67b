#pragma once

// Problem files (JSON). Rationals are integers or "p/q" strings; decimals are
// rejected. Errors carry the JSON path of the offending value, or the line
// and column for malformed text.

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"
#include "fuzzyip/fuzzy.hpp"
#include "fuzzyip/model.hpp"

namespace fuzzyip {

using Json = nlohmann::json;

using Problem = std::variant<MoilpProblem, FuzzyInequalityProblem, FuzzyObjectiveProblem,
                             CombinedFuzzyProblem>;

struct ParsedProblem {
  Problem problem;
  std::optional<HyperBox> bounds;  // "bounds" entry, over the problem's own variables
  bool ranking_given = false;
};

inline const char* kind_name(const Problem& p) {
  switch (p.index()) {
    case 0: return "moilp";
    case 1: return "fuzzy_inequality";
    case 2: return "fuzzy_objective";
    default: return "combined";
  }
}

namespace detail {

class Reader {
 public:
  explicit Reader(const Json& root) : root_(root) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ValidationError("at " + (path.empty() ? std::string("/") : path) + ": " + msg);
  }

  const Json& field(const Json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
    return *it;
  }

  const Json* optional_field(const Json& obj, const char* key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  Rational rational(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) {
      return j.is_number_unsigned() ? Rational(Integer(j.get<std::uint64_t>()))
                                    : Rational(Integer(j.get<std::int64_t>()));
    }
    if (j.is_number_float()) fail(path, "decimal numbers are not allowed; write \"p/q\"");
    if (j.is_string()) {
      if (auto r = parse_rational(j.get<std::string>())) return *r;
      fail(path, "\"" + j.get<std::string>() + "\" is not an integer or \"p/q\" rational");
    }
    fail(path, "expected a rational (integer or \"p/q\" string)");
  }

  Integer integer(const Json& j, const std::string& path) const {
    const Rational r = rational(j, path);
    if (!r.is_integer()) fail(path, "expected an integer, got " + r.str());
    return r.num();
  }

  std::int64_t small_integer(const Json& j, const std::string& path) const {
    const Integer v = integer(j, path);
    if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
        v < std::numeric_limits<std::int64_t>::min() / 4) {
      fail(path, "value out of range");
    }
    return v.convert_to<std::int64_t>();
  }

  IntVector int_vector(const Json& j, const std::string& path) const {
    IntVector out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      out.push_back(integer(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  std::vector<Rational> rat_vector(const Json& j, const std::string& path) const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      out.push_back(rational(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  IntMatrix int_matrix(const Json& j, const std::string& path) const {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      rows.push_back(int_vector(j[i], path + "/" + std::to_string(i)));
    }
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        fail(path + "/" + std::to_string(i), "row length " + std::to_string(rows[i].size()) +
                                                 " differs from " + std::to_string(cols));
      }
    }
    return IntMatrix(cols, std::move(rows));
  }

  FuzzyNumber fuzzy(const Json& j, const std::string& path) const {
    if (!j.is_object()) return FuzzyNumber::crisp(rational(j, path));
    const auto& kind = field(j, path, "kind");
    if (!kind.is_string()) fail(path + "/kind", "expected a string");
    const auto k = kind.get<std::string>();
    try {
      if (k == "piecewise_linear") {
        const auto& bp = field(j, path, "breakpoints");
        std::vector<Breakpoint> pts;
        for (std::size_t i = 0; i < array(bp, path + "/breakpoints").size(); ++i) {
          const auto sub = path + "/breakpoints/" + std::to_string(i);
          if (!bp[i].is_array() || bp[i].size() != 2) fail(sub, "expected [z, mu]");
          pts.push_back({rational(bp[i][0], sub + "/0"), rational(bp[i][1], sub + "/1")});
        }
        return FuzzyNumber::piecewise_linear(std::move(pts));
      }
      const auto pts = rat_vector(field(j, path, "points"), path + "/points");
      auto need = [&](std::size_t n) {
        if (pts.size() != n) {
          fail(path + "/points", k + " needs " + std::to_string(n) + " points, got " +
                                     std::to_string(pts.size()));
        }
      };
      if (k == "interval") {
        need(2);
        return FuzzyNumber::interval(pts[0], pts[1]);
      }
      if (k == "triangular") {
        need(3);
        return FuzzyNumber::triangular(pts[0], pts[1], pts[2]);
      }
      if (k == "trapezoidal") {
        need(4);
        return FuzzyNumber::trapezoidal(pts[0], pts[1], pts[2], pts[3]);
      }
      if (k == "lr") {
        need(3);
        LrShape left, right;
        if (const auto* s = optional_field(j, "left")) left.exponent = rational(*s, path + "/left");
        if (const auto* s = optional_field(j, "right")) right.exponent = rational(*s, path + "/right");
        return FuzzyNumber::lr(pts[0], pts[1], pts[2], left, right);
      }
    } catch (const InvalidArgument& e) {
      fail(path, std::string("invalid fuzzy number: ") + e.what());
    }
    fail(path + "/kind", "unknown fuzzy number kind \"" + k + "\"");
  }

  std::vector<FuzzyNumber> fuzzy_vector(const Json& j, const std::string& path) const {
    std::vector<FuzzyNumber> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      out.push_back(fuzzy(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  std::vector<FuzzyRow> fuzzy_rows(const Json& j, const std::string& path) const {
    std::vector<FuzzyRow> rows;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
      const auto sub = path + "/" + std::to_string(i);
      FuzzyRow r;
      r.coeffs = int_vector(field(j[i], sub, "coeffs"), sub + "/coeffs");
      r.rhs = integer(field(j[i], sub, "rhs"), sub + "/rhs");
      if (const auto* p = optional_field(j[i], "p")) r.p = integer(*p, sub + "/p");
      if (const auto* q = optional_field(j[i], "q")) r.q = integer(*q, sub + "/q");
      rows.push_back(std::move(r));
    }
    return rows;
  }

  CrispPolytope polytope(const Json& j, std::size_t n) const {
    CrispPolytope p{IntMatrix(n), {}, true};
    if (const auto* A = optional_field(j, "A")) {
      p.A = int_matrix(*A, "/A");
      if (p.A.rows() == 0) p.A = IntMatrix(n);
    }
    if (p.A.cols() != n) fail("/A", "column count differs from variable count " + std::to_string(n));
    if (const auto* b = optional_field(j, "b")) p.b = int_vector(*b, "/b");
    if (p.b.size() != p.A.rows()) fail("/b", "length differs from the row count of A");
    if (const auto* nn = optional_field(j, "nonneg")) {
      if (!nn->is_boolean()) fail("/nonneg", "expected true or false");
      p.nonneg = nn->get<bool>();
    }
    return p;
  }

  std::optional<HyperBox> bounds(const Json& j, std::size_t n) const {
    const auto* b = optional_field(j, "bounds");
    if (!b) return std::nullopt;
    std::vector<Interval> dims;
    for (std::size_t i = 0; i < array(*b, "/bounds").size(); ++i) {
      const auto sub = "/bounds/" + std::to_string(i);
      if (!(*b)[i].is_array() || (*b)[i].size() != 2) fail(sub, "expected [lo, hi]");
      const auto lo = small_integer((*b)[i][0], sub + "/0");
      const auto hi = small_integer((*b)[i][1], sub + "/1");
      if (lo > hi) fail(sub, "lo exceeds hi");
      dims.push_back({lo, hi});
    }
    if (dims.size() != n) fail("/bounds", "expected " + std::to_string(n) + " intervals");
    return HyperBox(std::move(dims));
  }

  std::vector<std::string> names(const Json& j) const {
    std::vector<std::string> out;
    if (const auto* n = optional_field(j, "names")) {
      for (std::size_t i = 0; i < array(*n, "/names").size(); ++i) {
        if (!(*n)[i].is_string()) fail("/names/" + std::to_string(i), "expected a string");
        out.push_back((*n)[i].get<std::string>());
      }
    }
    return out;
  }

  ParsedProblem parse() const {
    const auto& kind = field(root_, "", "kind");
    if (!kind.is_string()) fail("/kind", "expected a string");
    const auto k = kind.get<std::string>();
    ParsedProblem out{MoilpProblem{}, {}, false};
    auto ranking = [&](const std::vector<FuzzyNumber>& all) {
      if (const auto* r = optional_field(root_, "ranking")) {
        out.ranking_given = true;
        auto levels = rat_vector(*r, "/ranking");
        if (auto v = validate_ranking(levels); !v.empty()) fail("/ranking", v.front());
        return levels;
      }
      return default_ranking(all);
    };

    if (k == "moilp") {
      IntMatrix C = int_matrix(field(root_, "", "C"), "/C");
      if (C.rows() == 0) fail("/C", "at least one objective row is required");
      const std::size_t n = C.cols();
      auto poly = polytope(root_, n);
      out.bounds = bounds(root_, n);
      try {
        out.problem = make_moilp(std::move(poly), std::move(C), out.bounds, {}, names(root_));
      } catch (const InvalidArgument& e) {
        fail("", e.what());
      }
    } else if (k == "fuzzy_inequality") {
      FuzzyInequalityProblem p;
      p.objective = int_vector(field(root_, "", "objective"), "/objective");
      p.rows = fuzzy_rows(field(root_, "", "rows"), "/rows");
      out.bounds = bounds(root_, p.num_vars() + 1);
      out.problem = std::move(p);
    } else if (k == "fuzzy_objective") {
      auto coeffs = fuzzy_vector(field(root_, "", "objective"), "/objective");
      auto poly = polytope(root_, coeffs.size());
      out.bounds = bounds(root_, coeffs.size());
      auto levels = ranking(coeffs);
      out.problem = FuzzyObjectiveProblem{std::move(poly), std::move(coeffs), std::move(levels)};
    } else if (k == "combined") {
      const auto& objs = array(field(root_, "", "objectives"), "/objectives");
      CombinedFuzzyProblem p;
      std::vector<FuzzyNumber> all;
      for (std::size_t i = 0; i < objs.size(); ++i) {
        p.objectives.push_back(fuzzy_vector(objs[i], "/objectives/" + std::to_string(i)));
        all.insert(all.end(), p.objectives.back().begin(), p.objectives.back().end());
      }
      p.rows = fuzzy_rows(field(root_, "", "rows"), "/rows");
      out.bounds = bounds(root_, p.num_vars() + 1);
      p.ranking = ranking(all);
      out.problem = std::move(p);
    } else {
      fail("/kind", "unknown problem kind \"" + k +
                        "\" (expected moilp, fuzzy_inequality, fuzzy_objective or combined)");
    }
    return out;
  }

 private:
  const Json& root_;
};

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline ParsedProblem parse_problem_text(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ValidationError(detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + msg);
  }
  return detail::Reader(root).parse();
}

inline ParsedProblem parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const Integer& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline Json to_json(const Rational& r) {
  return r.is_integer() ? to_json(r.num()) : Json(r.str());
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(to_json(r));
  return a;
}

inline Json to_json(const LatticePoint& x) { return Json(x); }

inline Json to_json(const HyperBox& b) {
  Json a = Json::array();
  for (const auto& d : b.intervals()) a.push_back({d.lo, d.hi});
  return a;
}

inline Json to_json(const FuzzyNumber& f) {
  return std::visit(
      [&](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, detail::IntervalData>) {
          if (d.lo == d.hi) return to_json(d.lo);
          return {{"kind", "interval"}, {"points", {to_json(d.lo), to_json(d.hi)}}};
        } else if constexpr (std::is_same_v<T, detail::TriangularData>) {
          return {{"kind", "triangular"}, {"points", {to_json(d.a1), to_json(d.a2), to_json(d.a3)}}};
        } else if constexpr (std::is_same_v<T, detail::TrapezoidalData>) {
          return {{"kind", "trapezoidal"},
                  {"points", {to_json(d.a1), to_json(d.a2), to_json(d.a3), to_json(d.a4)}}};
        } else if constexpr (std::is_same_v<T, detail::PiecewiseLinearData>) {
          Json bp = Json::array();
          for (const auto& p : d.points) bp.push_back({to_json(p.z), to_json(p.mu)});
          return {{"kind", "piecewise_linear"}, {"breakpoints", bp}};
        } else {
          return {{"kind", "lr"},
                  {"points", {to_json(d.a0), to_json(d.a1), to_json(d.a2)}},
                  {"left", to_json(d.left.exponent)},
                  {"right", to_json(d.right.exponent)}};
        }
      },
      f.data());
}

inline Json to_json(const std::vector<FuzzyNumber>& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(to_json(f));
  return a;
}

inline Json to_json(const std::vector<FuzzyRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"coeffs", to_json(r.coeffs)},
                 {"rhs", to_json(r.rhs)},
                 {"p", to_json(r.p)},
                 {"q", to_json(r.q)}});
  }
  return a;
}

namespace detail {
inline void put_polytope(Json& j, const CrispPolytope& p) {
  j["A"] = to_json(p.A);
  j["b"] = to_json(p.b);
  j["nonneg"] = p.nonneg;
}
}  // namespace detail

inline Json to_json(const MoilpProblem& p) {
  Json j{{"kind", "moilp"}};
  detail::put_polytope(j, p.polytope);
  j["C"] = to_json(p.C);
  j["bounds"] = to_json(p.box);
  if (!p.names.empty()) j["names"] = p.names;
  return j;
}

inline Json to_json(const FuzzyInequalityProblem& p) {
  return {{"kind", "fuzzy_inequality"}, {"objective", to_json(p.objective)}, {"rows", to_json(p.rows)}};
}

inline Json to_json(const FuzzyObjectiveProblem& p) {
  Json j{{"kind", "fuzzy_objective"}};
  detail::put_polytope(j, p.polytope);
  j["objective"] = to_json(p.coefficients);
  j["ranking"] = to_json(p.ranking);
  return j;
}

inline Json to_json(const CombinedFuzzyProblem& p) {
  Json objs = Json::array();
  for (const auto& o : p.objectives) objs.push_back(to_json(o));
  return {{"kind", "combined"},
          {"objectives", objs},
          {"rows", to_json(p.rows)},
          {"ranking", to_json(p.ranking)}};
}

inline Json to_json(const ParsedProblem& p) {
  Json j = std::visit([](const auto& v) { return to_json(v); }, p.problem);
  // only user-given bounds; a MOILP's derived search box is not echoed back
  j.erase("bounds");
  if (p.bounds) j["bounds"] = to_json(*p.bounds);
  return j;
}

}  // namespace fuzzyip
