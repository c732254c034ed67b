#include <gtest/gtest.h>

#include "generators.hpp"

using namespace fuzzyip;

namespace {
MoilpProblem crisp3() {
  return make_moilp(CrispPolytope{IntMatrix{{8, -4, 1}, {6, 24, 1}, {0, 0, 1}}, make_int_vector({48, 105, 12})},
                    IntMatrix{{2, 5, 0}, {0, 0, 1}}, HyperBox({{0, 105}, {0, 105}, {0, 12}}));
}

/// Reference oracle with a fixed answer, for error paths.
struct ConstantOracle {
  std::size_t value;
  std::size_t count_in_box(const HyperBox&) const { return value; }
};

struct PointsOracle {
  std::vector<LatticePoint> pts;
  std::size_t count_in_box(const HyperBox& b) const {
    return static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [&](const auto& p) { return b.contains(p); }));
  }
};
}  // namespace

TEST(EnumerateLattice, Example1CrispPolytope) {
  CrispPolytope p{IntMatrix{{2, -1}, {2, 8}}, make_int_vector({9, 31})};
  const auto pts = enumerate_lattice(p, HyperBox::cube(2, 0, 20));
  EXPECT_EQ(pts.size(), 21u);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(EnumerateLattice, EmptyAndSingleton) {
  CrispPolytope empty{IntMatrix{{0, 0}}, make_int_vector({-1})};
  EXPECT_TRUE(enumerate_lattice(empty, HyperBox::cube(2, 0, 5)).empty());
  CrispPolytope p{IntMatrix{{1, 1}}, make_int_vector({4})};
  EXPECT_EQ(enumerate_lattice(p, HyperBox::point({1, 2})), (std::vector<LatticePoint>{{1, 2}}));
}

TEST(EnumerateLattice, GuardRefuses) {
  CrispPolytope p{IntMatrix{{1, 1}}, make_int_vector({4})};
  EXPECT_THROW(enumerate_lattice(p, HyperBox::cube(2, 0, 99), 9999), GuardLimitExceeded);
  EXPECT_NO_THROW(enumerate_lattice(p, HyperBox::cube(2, 0, 99), 10000));
}

TEST(Dominates, Examples) {
  EXPECT_TRUE(dominates(make_int_vector({30, 25, 35}), make_int_vector({27, 23, 31})));
  EXPECT_FALSE(dominates(make_int_vector({25, 3}), make_int_vector({23, 9})));
  EXPECT_FALSE(dominates(make_int_vector({23, 9}), make_int_vector({25, 3})));
  EXPECT_FALSE(dominates(make_int_vector({4, 4}), make_int_vector({4, 4})));
  EXPECT_THROW(dominates(make_int_vector({1}), make_int_vector({1, 2})), InvalidArgument);
}

TEST(NdBruteforce, Example1Crisp3) {
  const auto nd = nd_bruteforce(crisp3());
  ASSERT_EQ(nd.size(), 3u);
  EXPECT_EQ(nd[0].x, (LatticePoint{5, 3, 3}));
  EXPECT_EQ(nd[0].value, make_int_vector({25, 3}));
  EXPECT_EQ(nd[1].x, (LatticePoint{4, 3, 9}));
  EXPECT_EQ(nd[1].value, make_int_vector({23, 9}));
  EXPECT_EQ(nd[2].x, (LatticePoint{3, 3, 12}));
  EXPECT_EQ(nd[2].value, make_int_vector({21, 12}));
}

TEST(NdBruteforce, Example2MatchesExhaustiveOracle) {
  const auto p = make_moilp(CrispPolytope{IntMatrix{{2, -1}, {2, 8}}, make_int_vector({12, 35})},
                            IntMatrix{{3, 5}, {2, 5}, {3, 5}, {4, 5}});
  EXPECT_EQ(enumerate_lattice(p.polytope, p.box).size(), 30u);
  EXPECT_EQ(nd_bruteforce(p).sorted_points(), (std::vector<LatticePoint>{{5, 3}, {7, 2}}));
  // The point (4,3) is dominated by (5,3).
  EXPECT_TRUE(dominates(objective_values(p, {5, 3}), objective_values(p, {4, 3})));
}

TEST(NdBruteforce, InfeasibleAndTies) {
  auto empty = make_moilp(CrispPolytope{IntMatrix{{1, 1}, {-1, -1}}, make_int_vector({1, -3})}, IntMatrix{{1, 0}});
  EXPECT_TRUE(nd_bruteforce(empty).empty());
  // max x1 + x2 on x1 + x2 <= 2: three tied optima.
  auto ties = make_moilp(CrispPolytope{IntMatrix{{1, 1}}, make_int_vector({2})}, IntMatrix{{1, 1}});
  EXPECT_EQ(nd_bruteforce(ties).sorted_points(), (std::vector<LatticePoint>{{0, 2}, {1, 1}, {2, 0}}));
  ReferenceOracle o(ties);
  EXPECT_EQ(box_search(ties, o).nd.sorted_points(), nd_bruteforce(ties).sorted_points());
}

TEST(CountOracle, Example1) {
  const auto p = crisp3();
  EXPECT_EQ(count_nd_in_box(p.box, p), 3u);
  EXPECT_EQ(count_nd_in_box(HyperBox({{50, 60}, {0, 5}, {0, 12}}), p), 0u);
  EXPECT_EQ(count_nd_in_box(HyperBox::point({4, 3, 9}), p), 1u);
}

TEST(ExtractUnique, BinarySearch) {
  PointsOracle base{{{5, 3}}};
  CountingOracle<PointsOracle> o(base);
  EXPECT_EQ(extract_unique(HyperBox::cube(2, 0, 7), o), (LatticePoint{5, 3}));
  EXPECT_LE(o.calls(), 1u + 6u);
  CountingOracle<PointsOracle> o2(base);
  EXPECT_EQ(extract_unique(HyperBox::cube(2, 0, 7), o2, std::size_t{1}), (LatticePoint{5, 3}));
  EXPECT_LE(o2.calls(), 6u);
  CountingOracle<PointsOracle> o3(base);
  EXPECT_EQ(extract_unique(HyperBox::point({5, 3}), o3, std::size_t{1}), (LatticePoint{5, 3}));
  EXPECT_EQ(o3.calls(), 0u);
  PointsOracle two{{{1, 1}, {2, 2}}};
  EXPECT_THROW(extract_unique(HyperBox::cube(2, 0, 7), two), InvalidArgument);
}

TEST(BoxSearch, Example1) {
  const auto p = crisp3();
  ReferenceOracle o(p);
  std::vector<LatticePoint> emitted;
  const auto r = box_search(p, o, [&](const NdEntry& e) { emitted.push_back(e.x); });
  EXPECT_EQ(r.nd.sorted_points(), nd_bruteforce(p).sorted_points());
  EXPECT_EQ(emitted.size(), 3u);
  EXPECT_LE(r.stats.max_delay, r.stats.delay_bound);
}

TEST(BoxSearch, EmptyRootIsOneCall) {
  const auto p = crisp3();
  ConstantOracle zero{0};
  const auto r = box_search(p, zero);
  EXPECT_TRUE(r.nd.empty());
  EXPECT_EQ(r.stats.oracle_calls, 1u);
}

TEST(BoxSearch, OneDimensionalMaximum) {
  const auto p = make_moilp(CrispPolytope{IntMatrix{{1}}, make_int_vector({8})}, IntMatrix{{1}});
  ReferenceOracle o(p);
  const auto r = box_search(p, o);
  ASSERT_EQ(r.nd.size(), 1u);
  EXPECT_EQ(r.nd[0].x, (LatticePoint{8}));
  // root count plus at most ceil(log2(9)) bisection steps
  EXPECT_GE(r.stats.oracle_calls, 1u + 3u);
  EXPECT_LE(r.stats.oracle_calls, 1u + 4u);
}

TEST(BoxSearch, InconsistentOracleAborts) {
  const auto p = crisp3();
  ConstantOracle two{2};
  EXPECT_THROW(box_search(p, two), OracleInconsistency);
}

// Properties over random instances.

TEST(NdProperty, OracleAdditivityOverSubdivision) {
  gen::Gen g(51);
  for (int i = 0; i < 100; ++i) {
    const auto p = g.coin() ? g.moilp() : g.scaled_moilp();
    ReferenceOracle o(p);
    HyperBox b = p.box;
    for (int depth = 0; depth < 4 && !b.is_singleton(); ++depth) {
      const auto kids = b.subdivide();
      std::size_t sum = 0;
      for (const auto& k : kids) sum += o.count_in_box(k);
      EXPECT_EQ(sum, o.count_in_box(b));
      b = kids[static_cast<std::size_t>(g.integer(0, static_cast<std::int64_t>(kids.size()) - 1))];
    }
  }
}

TEST(NdProperty, BoxSearchEqualsBruteforceWithinDelayBound) {
  gen::Gen g(52);
  for (int i = 0; i < 200; ++i) {
    const auto p = g.coin(0.7) ? g.moilp() : g.scaled_moilp();
    ReferenceOracle o(p);
    const auto r = box_search(p, o);
    const auto truth = gen::nd_pairwise(p);
    EXPECT_EQ(r.nd.sorted_points(), truth);
    EXPECT_EQ(nd_bruteforce(p).sorted_points(), truth);
    EXPECT_LE(r.stats.max_delay, r.stats.delay_bound);
    // every emission is nondominated over the full feasible set
    const auto feasible = enumerate_lattice(p.polytope, p.box);
    for (const auto& e : r.nd) {
      for (const auto& u : feasible) EXPECT_FALSE(dominates(objective_values(p, u), e.value));
    }
  }
}
