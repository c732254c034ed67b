#include <gtest/gtest.h>

#include "generators.hpp"

using namespace fuzzyip;

namespace {
Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

FuzzyInequalityProblem example1() {
  return {make_int_vector({2, 5}),
          {{make_int_vector({2, -1}), 9, 1, 3}, {make_int_vector({2, 8}), 31, 1, 4}}};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}
}  // namespace

TEST(Validate, Example1IsValid) { EXPECT_TRUE(validate(example1()).empty()); }

TEST(Validate, ZeroSlopeIsReported) {
  auto p = example1();
  p.rows[0].p = 0;
  EXPECT_TRUE(mentions(validate(p), "slope must be positive"));
}

TEST(Validate, RankingWithoutOneIsReported) {
  FuzzyObjectiveProblem p{CrispPolytope{IntMatrix{{1, 1}}, make_int_vector({4})},
                          {FuzzyNumber::crisp(1), FuzzyNumber::crisp(2)},
                          {R(1, 2)}};
  EXPECT_FALSE(validate(p).empty());
  p.ranking = {R(1, 2), 1};
  EXPECT_TRUE(validate(p).empty());
}

TEST(Validate, UnboundedRegionIsReported) {
  // x1 - x2 <= 3 with x >= 0 is unbounded along (1, 1).
  CrispPolytope poly{IntMatrix{{1, -1}}, make_int_vector({3})};
  EXPECT_TRUE(mentions(check_bounded(poly), "unbounded"));
  FuzzyObjectiveProblem p{poly, {FuzzyNumber::crisp(1), FuzzyNumber::crisp(1)}, {1}};
  EXPECT_FALSE(validate(p).empty());
}

TEST(Validate, DimensionMismatch) {
  auto p = example1();
  p.rows[1].coeffs.push_back(3);
  EXPECT_TRUE(mentions(validate(p), "coefficient count"));
}

TEST(BoundingBox, Examples) {
  CrispPolytope crisp3{IntMatrix{{8, -4, 1}, {6, 24, 1}, {0, 0, 1}}, make_int_vector({48, 105, 12})};
  EXPECT_EQ(bound_L(crisp3), 105);
  EXPECT_EQ(bounding_box_L(crisp3), HyperBox::cube(3, 0, 105));

  CrispPolytope unit{IntMatrix{{1, -1}, {0, 1}}, make_int_vector({1, 1})};
  EXPECT_EQ(bound_L(unit), 1);

  CrispPolytope ints{IntMatrix{{2, 9}, {3, 4}}, make_int_vector({9, 9})};
  EXPECT_EQ(bound_L(ints), 9);

  CrispPolytope zero{IntMatrix{{0, 0}}, make_int_vector({0})};
  EXPECT_THROW(bound_L(zero), InvalidArgument);
}

TEST(BoundingBox, UserBoundsIntersect) {
  CrispPolytope p{IntMatrix{{1, 1}}, make_int_vector({9})};
  auto m = make_moilp(p, IntMatrix{{1, 0}}, HyperBox({{2, 5}, {0, 20}}));
  EXPECT_EQ(m.box, HyperBox({{2, 5}, {0, 9}}));
  EXPECT_THROW(make_moilp(p, IntMatrix{{1, 0}}, HyperBox({{20, 25}, {0, 1}})), InvalidArgument);
}

TEST(BoundingBox, LBoxCanMissFeasiblePointsAndValidateSaysSo) {
  // x2 <= 9, x1 - 9 x2 <= 9: L = 9 but (90, 9) is feasible.
  CrispPolytope p{IntMatrix{{0, 1}, {1, -9}}, make_int_vector({9, 9})};
  auto m = make_moilp(p, IntMatrix{{1, 1}});
  EXPECT_EQ(m.box, HyperBox::cube(2, 0, 9));
  EXPECT_TRUE(p.contains(LatticePoint{90, 9}));
  EXPECT_TRUE(mentions(validate(m), "leaves the search box"));
  auto wide = make_moilp(p, IntMatrix{{1, 1}}, {}, Integer(90));
  EXPECT_TRUE(validate(wide).empty());
}

TEST(Regions, ExpandedAndCrisp) {
  const auto p = example1();
  EXPECT_EQ(expanded_region(p.rows, 2).b, make_int_vector({12, 35}));
  EXPECT_EQ(crisp_region(p.rows, 2).b, make_int_vector({9, 31}));
}

TEST(DefaultRanking, AddsInteriorVertexLevels) {
  const auto pl = FuzzyNumber::piecewise_linear({{0, R(1, 4)}, {1, R(2, 3)}, {2, 1}, {3, R(1, 3)}});
  EXPECT_EQ(default_ranking({pl, FuzzyNumber::triangular(0, 1, 2)}),
            (std::vector<Rational>{R(1, 4), R(1, 3), R(1, 2), R(2, 3), 1}));
}

// Every feasible lattice point of a validated MOILP lies in its L-box.
TEST(ModelProperty, LBoxHoldsEveryFeasiblePointOfValidatedProblems) {
  gen::Gen g(31);
  int checked = 0, rejected = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    std::vector<IntVector> A;
    IntVector b;
    for (int r = 0; r < g.integer(1, 3); ++r) {
      IntVector row(n);
      for (auto& v : row) v = g.integer(-9, 9);
      A.push_back(row);
      b.push_back(g.integer(-9, 9));
    }
    CrispPolytope poly{IntMatrix(n, A), b};
    if (!validate(poly).empty() || b.empty()) continue;
    bool zero = true;
    for (const auto& row : A)
      for (const auto& v : row) zero = zero && v == 0;
    for (const auto& v : b) zero = zero && v == 0;
    if (zero) continue;
    auto m = make_moilp(poly, IntMatrix(n, {IntVector(n, 1)}));
    if (!validate(m).empty()) {
      ++rejected;
      continue;
    }
    // Scan a much larger box: nothing feasible may sit outside the L-box.
    const auto big = HyperBox::cube(n, 0, 3 * m.box[0].hi + 10);
    for (const auto& x : enumerate_lattice(poly, big)) EXPECT_TRUE(m.box.contains(x));
    ++checked;
  }
  EXPECT_GT(checked, 50);
  RecordProperty("rejected", rejected);
}
