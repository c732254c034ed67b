#include <gtest/gtest.h>

#include <filesystem>

#include "fuzzyip/fuzzyip.hpp"

using namespace fuzzyip;

namespace {
Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }
std::string file(const char* name) { return std::string(FUZZYIP_PROBLEMS_DIR) + "/" + name; }

std::string error_of(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST(Io, Example1) {
  const auto pp = parse_problem(file("example1.json"));
  const auto& p = std::get<FuzzyInequalityProblem>(pp.problem);
  EXPECT_EQ(p.objective, make_int_vector({2, 5}));
  ASSERT_EQ(p.rows.size(), 2u);
  EXPECT_EQ(p.rows[1], (FuzzyRow{make_int_vector({2, 8}), 31, 1, 4}));
  EXPECT_STREQ(kind_name(pp.problem), "fuzzy_inequality");
}

TEST(Io, Example2) {
  const auto pp = parse_problem(file("example2.json"));
  const auto& p = std::get<FuzzyObjectiveProblem>(pp.problem);
  EXPECT_EQ(p.coefficients[0], FuzzyNumber::triangular(1, 3, 5));
  EXPECT_EQ(p.coefficients[1], FuzzyNumber::crisp(5));
  EXPECT_EQ(p.ranking, (std::vector<Rational>{R(1, 2), 1}));
  EXPECT_TRUE(pp.ranking_given);
  EXPECT_EQ(p.polytope.b, make_int_vector({12, 35}));
}

TEST(Io, FuzzyNumberForms) {
  const auto pp = parse_problem_text(R"({"kind":"fuzzy_objective","A":[[1,1]],"b":[4],
    "objective":[{"kind":"piecewise_linear","breakpoints":[[0,"1/2"],[1,1],[2,0]]},
                 {"kind":"lr","points":[0,1,2],"left":2,"right":"1/2"}]})");
  const auto& p = std::get<FuzzyObjectiveProblem>(pp.problem);
  EXPECT_EQ(p.coefficients[0].kind(), FuzzyKind::PiecewiseLinear);
  EXPECT_TRUE(p.coefficients[1].is_lr());
  EXPECT_FALSE(pp.ranking_given);
  EXPECT_EQ(p.ranking, default_ranking(p.coefficients));
}

TEST(Io, RejectsDecimals) {
  const auto msg = error_of(R"({"kind":"fuzzy_inequality","objective":[1],
    "rows":[{"coeffs":[1],"rhs":"9.5","p":1,"q":1}]})");
  EXPECT_NE(msg.find("/rows/0/rhs"), std::string::npos) << msg;
  EXPECT_NE(error_of(R"({"kind":"moilp","C":[[1.5]],"A":[[1]],"b":[1]})"), "");
  EXPECT_THROW(parse_problem(file("invalid_decimal.json")), ValidationError);
}

TEST(Io, RejectsUnknownKindAndMissingFields) {
  EXPECT_NE(error_of(R"({"kind":"quadratic"})").find("kind"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"moilp","A":[[1]],"b":[1]})").find("C"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"fuzzy_objective","A":[[1]],"b":[1],
    "objective":[{"kind":"blob","points":[1]}]})"), "");
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  const auto msg = error_of("{\n  \"kind\": \"moilp\",\n  \"C\": [[1,]\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Io, MissingFile) { EXPECT_THROW(parse_problem(file("does_not_exist.json")), ValidationError); }

TEST(Io, RoundTripShippedProblems) {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FUZZYIP_PROBLEMS_DIR)) {
    if (entry.path().extension() != ".json" || entry.path().stem() == "invalid_decimal") continue;
    const auto a = parse_problem(entry.path().string());
    const auto b = parse_problem_text(to_json(a).dump());
    EXPECT_EQ(a.problem, b.problem) << entry.path();
    EXPECT_EQ(a.bounds, b.bounds) << entry.path();
    ++n;
  }
  EXPECT_GE(n, 4);
}

TEST(Io, MoilpWithBoundsAndNames) {
  const auto pp = parse_problem_text(R"({"kind":"moilp","C":[[1,0],[0,1]],"A":[[1,1]],"b":[4],
    "bounds":[[0,3],[1,2]],"names":["a","b"]})");
  ASSERT_TRUE(pp.bounds);
  EXPECT_EQ(*pp.bounds, HyperBox({{0, 3}, {1, 2}}));
  EXPECT_EQ(std::get<MoilpProblem>(pp.problem).names, (std::vector<std::string>{"a", "b"}));
  const auto again = parse_problem_text(to_json(pp).dump());
  EXPECT_EQ(again.problem, pp.problem);
}
