#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

using namespace fuzzyip;

namespace {
Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }
const Rational kLrTol(Integer(1), Integer(1) << 30);
}  // namespace

TEST(Membership, Triangular) {
  const auto c = FuzzyNumber::triangular(1, 3, 5);
  EXPECT_EQ(membership_at(c, 3), R(1));
  EXPECT_EQ(membership_at(c, 2), R(1, 2));
  EXPECT_EQ(membership_at(c, 4), R(1, 2));
  EXPECT_EQ(membership_at(c, 100), R(0));
  EXPECT_EQ(membership_at(c, -100), R(0));
}

TEST(Membership, TrapezoidalAndInterval) {
  const auto t = FuzzyNumber::trapezoidal(0, 2, 4, 8);
  EXPECT_EQ(membership_at(t, 1), R(1, 2));
  EXPECT_EQ(membership_at(t, 3), R(1));
  EXPECT_EQ(membership_at(t, 6), R(1, 2));
  const auto i = FuzzyNumber::interval(R(1, 2), 3);
  EXPECT_EQ(membership_at(i, 2), R(1));
  EXPECT_EQ(membership_at(i, 4), R(0));
}

TEST(AlphaCut, Examples) {
  const auto c = FuzzyNumber::triangular(1, 3, 5);
  EXPECT_EQ(alpha_cut(c, R(1, 2)), (AlphaCut{2, 4}));
  EXPECT_EQ(alpha_cut(c, 1), (AlphaCut{3, 3}));
  const auto i = FuzzyNumber::interval(-2, 7);
  EXPECT_EQ(alpha_cut(i, R(1, 9)), (AlphaCut{-2, 7}));
  EXPECT_EQ(alpha_cut(i, 1), (AlphaCut{-2, 7}));
  EXPECT_THROW(alpha_cut(c, 0), InvalidArgument);
  EXPECT_THROW(alpha_cut(c, R(3, 2)), InvalidArgument);
}

TEST(AlphaCutDot, Examples) {
  const std::vector<FuzzyNumber> c{FuzzyNumber::triangular(1, 3, 5), FuzzyNumber::crisp(5)};
  EXPECT_EQ(alpha_cut_dot(c, make_int_vector({1, 1}), R(1, 2)), (AlphaCut{7, 9}));
  EXPECT_EQ(alpha_cut_dot(c, make_int_vector({0, 0}), R(1, 2)), (AlphaCut{0, 0}));
  const std::vector<FuzzyNumber> crisp{FuzzyNumber::crisp(2), FuzzyNumber::crisp(-3)};
  EXPECT_EQ(alpha_cut_dot(crisp, make_int_vector({4, 1}), R(1, 3)), (AlphaCut{5, 5}));
  EXPECT_THROW(alpha_cut_dot(c, make_int_vector({-1, 0}), R(1, 2)), InvalidArgument);
}

TEST(PiecewiseLinear, NormalizesAndValidates) {
  const auto f = FuzzyNumber::piecewise_linear({{0, 0}, {2, R(1, 2)}, {4, 0}});
  EXPECT_EQ(membership_at(f, 2), R(1));
  EXPECT_EQ(membership_at(f, 1), R(1, 2));
  EXPECT_THROW(FuzzyNumber::piecewise_linear({{0, 1}, {1, 0}, {2, 1}}), InvalidArgument);
  EXPECT_THROW(FuzzyNumber::piecewise_linear({{0, 1}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(FuzzyNumber::piecewise_linear({{0, 0}, {1, 0}}), InvalidArgument);
  EXPECT_THROW(FuzzyNumber::triangular(3, 1, 5), InvalidArgument);
}

TEST(Ranking, Validation) {
  EXPECT_NO_THROW(RankingSystem({R(1, 2), 1}));
  EXPECT_THROW(RankingSystem({R(1, 2)}), InvalidArgument);
  EXPECT_THROW(RankingSystem({R(1, 2), R(1, 2), 1}), InvalidArgument);
  EXPECT_THROW(RankingSystem({0, 1}), InvalidArgument);
  EXPECT_EQ(RankingSystem::uniform(4).levels().size(), 4u);
  EXPECT_EQ(RankingSystem::from_unsorted({1, R(1, 4), R(1, 4)}).levels(),
            (std::vector<Rational>{R(1, 4), 1}));
}

TEST(Lr, LinearShapesAreTriangular) {
  const auto lr = FuzzyNumber::lr(1, 3, 5, {}, {});
  const auto tri = FuzzyNumber::triangular(1, 3, 5);
  for (int i = 1; i <= 8; ++i) {
    const Rational a = R(i, 8);
    EXPECT_EQ(alpha_cut(lr, a), alpha_cut(tri, a));
  }
  const auto approx = approximate_lr(lr, 1);
  EXPECT_EQ(approx.as<detail::PiecewiseLinearData>().points,
            (std::vector<Breakpoint>{{1, 0}, {3, 1}, {5, 0}}));
}

TEST(Lr, QuadraticCutIsOutwardRounded) {
  const auto lr = FuzzyNumber::lr(0, 1, 2, {R(2)}, {R(2)});
  // mu(z) = 1 - (1 - z)^2 on the left; the 1/2-cut starts at 1 - sqrt(1/2).
  const auto cut = alpha_cut(lr, R(1, 2));
  EXPECT_LE(cut.lo, R(2929, 10000));
  EXPECT_GE(cut.lo, R(2928, 10000));
  EXPECT_GE(membership_at(lr, cut.lo), R(1, 2) - kLrTol);
  EXPECT_LE(membership_at(lr, cut.lo), R(1, 2));
  // exact when the root is rational
  EXPECT_EQ(alpha_cut(lr, R(3, 4)), (AlphaCut{R(1, 2), R(3, 2)}));
}

TEST(Lr, TransformRefusesWithoutApproximation) {
  EXPECT_THROW(approximate_lr(FuzzyNumber::triangular(1, 2, 3), 2), InvalidArgument);
  EXPECT_THROW(approximate_lr(FuzzyNumber::lr(0, 1, 2, {}, {}), 0), InvalidArgument);
}

// Properties over random fuzzy numbers.

TEST(FuzzyProperty, CutNesting) {
  gen::Gen g(21);
  for (int i = 0; i < 300; ++i) {
    const auto f = g.coin(0.8) ? g.linear_fuzzy() : g.lr();
    Rational a = R(g.integer(1, 16), 16), b = R(g.integer(1, 16), 16);
    if (b < a) std::swap(a, b);
    const auto ca = alpha_cut(f, a), cb = alpha_cut(f, b);
    EXPECT_LE(cb.lo, cb.hi);
    EXPECT_TRUE(ca.contains(cb)) << to_string(f.kind());
  }
}

TEST(FuzzyProperty, MembershipCutBiconditional) {
  gen::Gen g(22);
  for (int i = 0; i < 300; ++i) {
    const auto f = g.linear_fuzzy();
    const Rational a = R(g.integer(1, 12), 12);
    const auto cut = alpha_cut(f, a);
    for (int j = 0; j < 20; ++j) {
      const Rational z = g.rational(-8, 14, 6);
      EXPECT_EQ(membership_at(f, z) >= a, cut.contains(z)) << to_string(f.kind()) << " z=" << z;
    }
    EXPECT_GE(membership_at(f, cut.lo), a);
    EXPECT_GE(membership_at(f, cut.hi), a);
  }
}

TEST(FuzzyProperty, Normality) {
  gen::Gen g(23);
  for (int i = 0; i < 200; ++i) {
    const auto f = g.coin() ? g.linear_fuzzy() : g.lr();
    const auto core = alpha_cut(f, 1);
    EXPECT_EQ(membership_at(f, core.lo), Rational(1));
  }
}

TEST(FuzzyProperty, CutDotDistributes) {
  gen::Gen g(24);
  for (int i = 0; i < 200; ++i) {
    std::vector<FuzzyNumber> cs;
    IntVector x;
    for (int j = 0; j < 3; ++j) {
      cs.push_back(g.linear_fuzzy());
      x.push_back(g.integer(0, 6));
    }
    const Rational a = R(g.integer(1, 8), 8);
    RatVector lo, hi;
    for (const auto& c : cs) {
      lo.push_back(alpha_cut(c, a).lo);
      hi.push_back(alpha_cut(c, a).hi);
    }
    const auto d = alpha_cut_dot(cs, x, a);
    EXPECT_EQ(d.lo, rat_dot(lo, x));
    EXPECT_EQ(d.hi, rat_dot(hi, x));
  }
}

TEST(FuzzyProperty, LrApproximationNodesAndRefinement) {
  gen::Gen g(25);
  for (int i = 0; i < 60; ++i) {
    const auto f = g.lr();
    const auto& d = f.as<detail::LrData>();
    double prev = 2;
    for (unsigned k : {1u, 2u, 4u, 8u}) {
      const auto pl = approximate_lr(f, k);
      for (unsigned j = 1; j <= k; ++j) {
        const Rational a = R(j, k);
        EXPECT_EQ(alpha_cut(pl, a), alpha_cut(f, a)) << "k=" << k << " j=" << j;
        EXPECT_EQ(membership_at(pl, alpha_cut(f, a).lo), a);
      }
      Rational worst = 0;
      for (int s = 0; s <= 64; ++s) {
        const Rational z = d.a0 + (d.a2 - d.a0) * Rational(Integer(s), Integer(64));
        worst = max(worst, abs(membership_at(pl, z) - membership_at(f, z)));
      }
      EXPECT_LE(worst.to_double(), prev + std::ldexp(1.0, -28)) << "k=" << k;
      prev = worst.to_double();
    }
  }
}
