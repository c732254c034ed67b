#include <gtest/gtest.h>

#include "generators.hpp"

using namespace fuzzyip;

namespace {
MoilpProblem crisp3() {
  return make_moilp(CrispPolytope{IntMatrix{{8, -4, 1}, {6, 24, 1}, {0, 0, 1}}, make_int_vector({48, 105, 12})},
                    IntMatrix{{2, 5, 0}, {0, 0, 1}}, HyperBox({{0, 105}, {0, 105}, {0, 12}}));
}
}  // namespace

TEST(Genfun, IntervalExpandsToItsPoints) {
  const auto g = gf_interval(5);
  EXPECT_EQ(to_string(g), "1/(1 - z) + z^5/(1 - z^-1)");
  const auto s = expand(g, HyperBox({{-10, 20}}));
  EXPECT_EQ(s.support(), (std::vector<LatticePoint>{{0}, {1}, {2}, {3}, {4}, {5}}));
  EXPECT_TRUE(s.is_indicator());
  EXPECT_EQ(s.total(), 6);
  EXPECT_EQ(expand(gf_interval(0), HyperBox({{-3, 3}})).support(), (std::vector<LatticePoint>{{0}}));
  EXPECT_THROW(gf_interval(-1), InvalidArgument);
}

TEST(Genfun, BoxExpandsToItsPoints) {
  const HyperBox b({{0, 2}, {0, 2}, {0, 1}});
  const auto g = gf_box(b);
  EXPECT_EQ(g.size(), 8u);
  const auto s = expand(g, HyperBox::cube(3, -2, 4));
  EXPECT_EQ(s.total(), 18);
  EXPECT_EQ(s.support_size(), 18u);
  EXPECT_TRUE(s.is_indicator());
  const HyperBox sq({{1, 3}, {-1, 2}});
  EXPECT_EQ(expand(gf_box(sq), HyperBox::cube(2, -4, 6)).total(), 12);
}

TEST(Genfun, ExpandSingleTerms) {
  // 1/(1 - z) truncated to the window [0, 4]
  GfSum g(1);
  g.add(GfTerm(+1, {0}, {{1}}));
  EXPECT_EQ(expand(g, HyperBox({{-2, 4}})).support_size(), 5u);
  // z^2/(1 - z^-1) is rewritten as -z^3/(1 - z) before expanding
  GfSum h(1);
  h.add(GfTerm(+1, {2}, {{-1}}));
  const auto s = expand(h, HyperBox({{-3, 5}}));
  EXPECT_EQ(s.coefficient({2}), 0);
  EXPECT_EQ(s.coefficient({3}), -1);
  EXPECT_EQ(s.coefficient({5}), -1);
  // a single negative term
  GfSum k(2);
  k.add(GfTerm(-1, {1, 1}, {}));
  EXPECT_EQ(expand(k, HyperBox::cube(2, 0, 2)).coefficient({1, 1}), -1);
}

TEST(Genfun, ExpandGuard) {
  GfSum g(1);
  g.add(GfTerm(+1, {0}, {{1}}));
  EXPECT_THROW(expand(g, HyperBox({{0, 1000}}), 100), GuardLimitExceeded);
}

TEST(Genfun, TermValidation) {
  EXPECT_THROW(GfTerm(2, {0}, {}), InvalidArgument);
  EXPECT_THROW(GfTerm(1, {0, 0}, {{0, 0}}), InvalidArgument);
  EXPECT_THROW(GfTerm(1, {0, 0}, {{1}}), InvalidArgument);
  GfSum a(1);
  EXPECT_THROW(a.add(GfTerm(1, {0, 0}, {})), InvalidArgument);
}

TEST(Genfun, DifferenceOfIntervals) {
  const auto d = expand(gf_interval(7) - gf_interval(3), HyperBox({{-5, 12}}));
  EXPECT_EQ(d.support(), (std::vector<LatticePoint>{{4}, {5}, {6}, {7}}));
}

TEST(Genfun, Hadamard) {
  const auto a = MonomialSeries::indicator(HyperBox::cube(2, 0, 3), {{0, 0}, {1, 1}, {2, 2}});
  const auto b = MonomialSeries::indicator(HyperBox::cube(2, 1, 5), {{1, 1}, {2, 2}, {4, 4}});
  const auto h = hadamard(a, b);
  EXPECT_EQ(h.window(), HyperBox::cube(2, 1, 3));
  EXPECT_EQ(h.support(), (std::vector<LatticePoint>{{1, 1}, {2, 2}}));
  const auto far = MonomialSeries::indicator(HyperBox::cube(2, 10, 11), {{10, 10}});
  EXPECT_TRUE(hadamard(a, far).is_zero());
}

TEST(Genfun, NdPipelineExample1) {
  const auto p = crisp3();
  const HyperBox w({{0, 10}, {0, 10}, {0, 12}});
  const auto f = feasible_series(p, w);
  EXPECT_TRUE(f.is_indicator());
  EXPECT_EQ(static_cast<std::size_t>(f.total()), enumerate_lattice(p.polytope, w).size());
  const auto nd = nd_series(p, w);
  EXPECT_EQ(nd.support(), (std::vector<LatticePoint>{{3, 3, 12}, {4, 3, 9}, {5, 3, 3}}));
  EXPECT_EQ((f - dominated_series(p, w)), nd);
}

TEST(Genfun, OracleExample1) {
  const auto p = crisp3();
  GenfunOracle g(p);
  ReferenceOracle r(p);
  EXPECT_EQ(g.count_in_box(p.box), 3u);
  EXPECT_EQ(g.count_in_box(HyperBox({{4, 5}, {0, 105}, {0, 12}})), 2u);
  EXPECT_EQ(box_search(p, g).nd.sorted_points(), box_search(p, r).nd.sorted_points());
  CrossCheckOracle<GenfunOracle, ReferenceOracle> both(g, r);
  EXPECT_EQ(box_search(p, both).nd.size(), 3u);
  EXPECT_GT(both.checked(), 0u);
}

TEST(Genfun, CrossCheckCatchesDisagreement) {
  struct Off {
    std::size_t count_in_box(const HyperBox&) const { return 7; }
  };
  const auto p = crisp3();
  ReferenceOracle r(p);
  Off off;
  CrossCheckOracle<ReferenceOracle, Off> both(r, off);
  EXPECT_THROW(both.count_in_box(p.box), OracleInconsistency);
}

TEST(Genfun, ToStringMultivariate) {
  const auto g = gf_box(HyperBox({{0, 1}, {2, 3}}));
  EXPECT_EQ(to_string(g.terms()[0]), "z2^2/((1 - z1)*(1 - z2))");
  EXPECT_EQ(to_string(g.terms()[3], {"a", "b"}), "a*b^3/((1 - a^-1)*(1 - b^-1))");
}

// Properties

TEST(GenfunProperty, RandomBoxesExpandToTheirIndicator) {
  gen::Gen g(61);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
    const auto b = g.box(d, 6);
    const auto w = g.box(d, 14, 9);
    const auto s = expand(gf_box(b), w);
    EXPECT_TRUE(s.is_indicator());
    for_each_point(w, [&](const LatticePoint& x) { EXPECT_EQ(s.coefficient(x), b.contains(x) ? 1 : 0); });
  }
}

TEST(GenfunProperty, HadamardOfIndicatorsIsIntersection) {
  gen::Gen g(62);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
    const auto w = HyperBox::cube(d, -6, 6);
    const auto a = g.box(d, 6);
    const auto b = g.box(d, 6);
    const auto h = hadamard(expand(gf_box(a), w), expand(gf_box(b), w));
    auto inter = a.intersect(b);
    if (inter) inter = inter->intersect(w);
    EXPECT_EQ(static_cast<std::uint64_t>(h.total()), inter ? inter->volume() : 0u);
    EXPECT_EQ(hadamard(expand(gf_box(a), w), expand(gf_box(b), w)),
              hadamard(expand(gf_box(b), w), expand(gf_box(a), w)));
  }
}

TEST(GenfunProperty, OracleMatchesReferenceOnRandomBoxes) {
  gen::Gen g(63);
  for (int i = 0; i < 60; ++i) {
    const auto p = g.moilp(2);
    GenfunOracle go(p);
    ReferenceOracle ro(p);
    for (int t = 0; t < 10; ++t) {
      std::vector<Interval> dims;
      for (std::size_t j = 0; j < p.num_vars(); ++j) {
        const auto lo = g.integer(p.box[j].lo, p.box[j].hi);
        dims.push_back({lo, g.integer(lo, p.box[j].hi)});
      }
      const HyperBox b(dims);
      EXPECT_EQ(go.count_in_box(b), ro.count_in_box(b));
    }
  }
}
