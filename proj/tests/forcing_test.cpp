#include "mforce/forcing.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "mforce/oracle.hpp"
#include "test_util.hpp"

namespace mforce {
namespace {

std::set<Position> as_set(const std::vector<Position>& v) { return {v.begin(), v.end()}; }

TEST(DominationTest, Definitions) {
  EXPECT_TRUE(dominates({2, 3}, {1, 1}));
  EXPECT_FALSE(dominates({1, 1}, {2, 3}));
  EXPECT_TRUE(alt_dominates({1, 3}, {2, 1}));
  EXPECT_FALSE(alt_dominates({2, 1}, {1, 3}));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_TRUE(dominates({i, j}, {i, j}));
      EXPECT_TRUE(alt_dominates({i, j}, {i, j}));
    }
  }
}

TEST(CornerFunctionsTest, WorkedExampleCardinalities) {
  const auto q = test::fixture("q7x6.txt");
  const auto rep = corner_functions(q);
  EXPECT_EQ(rep.nw.size(), 7u);
  EXPECT_EQ(rep.sw.size(), 4u);
  EXPECT_EQ(rep.ne.size(), 8u);
  EXPECT_EQ(rep.se.size(), 2u);
  EXPECT_EQ(rep.nw_shape, (std::vector<std::size_t>{2, 2, 1, 1, 1}));
  EXPECT_EQ(rep.ne_shape, (std::vector<std::size_t>{3, 2, 2, 1}));
  EXPECT_EQ(rep.sw_shape, (std::vector<std::size_t>{4}));
  EXPECT_EQ(rep.se_shape, (std::vector<std::size_t>{1, 1}));
}

TEST(CornerFunctionsTest, AllOnePatternHasEmptyCorners) {
  const auto rep = corner_functions(all_ones(3));
  EXPECT_EQ(rep.total(), 0u);
  EXPECT_TRUE(rep.nw_shape.empty());
}

TEST(CornerFunctionsTest, IdentityTwo) {
  const auto rep = corner_functions(identity(2));
  EXPECT_TRUE(rep.nw.empty());
  EXPECT_TRUE(rep.se.empty());
  EXPECT_EQ(rep.ne, (std::vector<Position>{{0, 1}}));
  EXPECT_EQ(rep.sw, (std::vector<Position>{{1, 0}}));
}

TEST(CoreTest, WorkedExample) {
  const auto d = core(test::fixture("padded_q.txt"));
  EXPECT_EQ(d.top_zero_rows, 3u);
  EXPECT_EQ(d.bottom_zero_rows, 0u);
  EXPECT_EQ(d.left_zero_cols, 0u);
  EXPECT_EQ(d.right_zero_cols, 1u);
  EXPECT_EQ(d.core, test::fixture("padded_core.txt"));
  EXPECT_EQ(d.reconstruct(), test::fixture("padded_q.txt"));
}

TEST(CoreTest, FullBoundaryAndCornerOne) {
  const auto q = test::fixture("q7x6.txt");
  const auto d = core(q);
  EXPECT_EQ(d.core, q);
  EXPECT_EQ(d.top_zero_rows + d.bottom_zero_rows + d.left_zero_cols + d.right_zero_cols, 0u);

  const auto e = core(BitMatrix{{0, 1}, {0, 0}});
  EXPECT_EQ(e.top_zero_rows, 0u);
  EXPECT_EQ(e.bottom_zero_rows, 1u);
  EXPECT_EQ(e.left_zero_cols, 1u);
  EXPECT_EQ(e.right_zero_cols, 0u);
  EXPECT_EQ(e.core, BitMatrix({{1}}));
}

TEST(CoreTest, RejectsAllZero) { EXPECT_THROW(core(BitMatrix(2, 3)), std::invalid_argument); }

TEST(MinimalForcingTest, WorkedExample) {
  const auto q = test::fixture("q7x6.txt");
  const auto expected = test::fixture("q7x6_min_14x12.txt");
  EXPECT_EQ(minimal_forcing(14, 12, q), expected);
  EXPECT_EQ(construct_A_mnQ(14, 12, q), expected);
}

TEST(MinimalForcingTest, OneByOneGivesAllOnes) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 70; n += 23) EXPECT_EQ(minimal_forcing(m, n, BitMatrix{{1}}), all_ones(m, n));
}

TEST(MinimalForcingTest, CornerOnePattern) {
  const BitMatrix q2{{1, 0}, {0, 0}};
  for (std::size_t m = 2; m <= 7; ++m) {
    for (std::size_t n = 2; n <= 7; ++n) {
      const auto a = minimal_forcing(m, n, q2);
      EXPECT_EQ(a.ones_count(), (m - 1) * (n - 1));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(a(i, j), i + 1 < m && j + 1 < n);
    }
  }
}

TEST(MinimalForcingTest, WideAmbientCrossesWordBoundary) {
  const auto q = test::fixture("q7x6.txt");
  for (std::size_t n : {63u, 64u, 65u, 129u}) {
    const auto a = minimal_forcing(15, n, q);
    EXPECT_TRUE(a.padding_is_clear());
    EXPECT_EQ(a.ones_count(), min_ones(15, n, q).value) << n;
  }
}

TEST(MinimalForcingTest, Preconditions) {
  EXPECT_THROW(minimal_forcing(2, 5, identity(3)), std::invalid_argument);
  EXPECT_THROW(minimal_forcing(4, 4, BitMatrix(2, 2)), std::invalid_argument);
}

TEST(IsForcingTest, Basics) {
  const auto q = test::fixture("q7x6.txt");
  EXPECT_TRUE(is_forcing(all_ones(9, 9), q));
  EXPECT_TRUE(is_forcing(minimal_forcing(10, 8, q), q));
  EXPECT_FALSE(is_forcing(BitMatrix(9, 9), q));
  EXPECT_THROW(is_forcing(all_ones(3, 3), q), std::invalid_argument);
}

TEST(IsForcingTest, EverySingleFlipBreaksMinimality) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 1 + rng() % 3, t = 1 + rng() % 3;
    const auto q = test::random_pattern(s, t, rng());
    const std::size_t m = s + rng() % 4, n = t + rng() % 4;
    const auto a = minimal_forcing(m, n, q);
    ASSERT_TRUE(oracle::is_forcing(a, q));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(i, j)) continue;
        auto b = a;
        b.set(i, j, false);
        EXPECT_FALSE(is_forcing(b, q));
        EXPECT_FALSE(oracle::is_forcing(b, q));
      }
    }
  }
}

TEST(ConstructAmnQTest, Basics) {
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(construct_A_mnQ(2 * k, 2 * k, all_ones(k)), all_ones(2 * k));
  const auto a = construct_A_mnQ(8, 8, identity(2));
  EXPECT_EQ(a, minimal_forcing(8, 8, identity(2)));
  EXPECT_EQ(a.zeros_count(), 2u);
  EXPECT_FALSE(a(0, 7));
  EXPECT_FALSE(a(7, 0));
  EXPECT_THROW(construct_A_mnQ(5, 8, identity(3)), std::invalid_argument);
}

TEST(MinOnesTest, Examples) {
  const auto q = test::fixture("q7x6.txt");
  EXPECT_EQ(min_ones(14, 12, q).value, test::fixture("q7x6_min_14x12.txt").ones_count());
  EXPECT_EQ(min_ones(14, 12, q).value, 147u);

  const BitMatrix q2{{1, 0}, {0, 0}};
  for (std::size_t m = 4; m <= 9; ++m)
    for (std::size_t n = 4; n <= 9; ++n) EXPECT_EQ(min_ones(m, n, q2).value, (m - 1) * (n - 1));

  for (std::size_t n = 4; n <= 10; ++n) EXPECT_EQ(min_ones(n, n, identity(2)).value, n * n - 2);
}

TEST(MinOnesTest, FormulaSelection) {
  EXPECT_EQ(min_ones(3, 3, identity(3)).formula, MinOnesFormula::trivial);
  EXPECT_EQ(min_ones(3, 3, identity(3)).value, 3u);
  EXPECT_EQ(min_ones(8, 8, identity(3)).formula, MinOnesFormula::core_based);
  // Q2 has core [1]; the core formula applies from m = n = 3.
  EXPECT_EQ(min_ones(3, 3, BitMatrix{{1, 0}, {0, 0}}).value, 4u);
  EXPECT_THROW(min_ones(4, 4, identity(3)), std::domain_error);
  EXPECT_EQ(min_ones_value(4, 4, identity(3)), minimal_forcing(4, 4, identity(3)).ones_count());
}

TEST(MinOnesTest, GeneralAndBoundaryFormulasWhereDefined) {
  const auto q = test::fixture("padded_q.txt");  // 7x5, core 4x4
  const auto g = min_ones_general(14, 10, q);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, minimal_forcing(14, 10, q).ones_count());
  EXPECT_FALSE(min_ones_boundary(14, 10, q).has_value());
  EXPECT_FALSE(min_ones_general(13, 10, q).has_value());
  // m - (s - s') = 10 - 3 = 7 < 8: the core formula is out of range too.
  EXPECT_FALSE(min_ones_core(10, 10, q).has_value());
  EXPECT_EQ(*min_ones_core(11, 9, q), minimal_forcing(11, 9, q).ones_count());
}

TEST(PermutationBoundsTest, MinBound) {
  EXPECT_EQ(perm_min_bound(8, 3), 58u);
  EXPECT_TRUE(perm_min_equality(hankel(4)));
  EXPECT_TRUE(perm_min_equality(identity(4)));
  EXPECT_EQ(corner_functions(hankel(4)).total(), 12u);

  const auto p = permutation_matrix("2314");
  EXPECT_FALSE(perm_min_equality(p));
  EXPECT_EQ(min_ones(8, 8, p).value, 55u);
  EXPECT_GT(min_ones(8, 8, p).value, perm_min_bound(8, 4));
  EXPECT_THROW(perm_min_equality(all_ones(2)), std::invalid_argument);
}

TEST(PermutationBoundsTest, MaxOverFourByFour) {
  EXPECT_EQ(perm_max_m(8, 3), 59u);
  EXPECT_EQ(perm_max_m(10, 4), 92u);
  std::size_t best = 0;
  std::set<std::vector<int>> maximizers;
  for (const auto& p : all_permutation_matrices(4)) {
    const std::size_t v = min_ones(8, 8, p).value;
    if (v > best) {
      best = v;
      maximizers.clear();
    }
    if (v == best) maximizers.insert(permutation_of(p));
  }
  EXPECT_EQ(best, 56u);
  EXPECT_EQ(maximizers, (std::set<std::vector<int>>{{2, 4, 1, 3}, {3, 1, 4, 2}}));
  for (const auto& p : all_permutation_matrices(4)) {
    EXPECT_EQ(perm_max_extremal(p), maximizers.count(permutation_of(p)) == 1);
  }
  EXPECT_THROW(perm_max_extremal(identity(3)), std::invalid_argument);
}

// Properties.

TEST(ForcingProperty, WindowAlgorithmMatchesSubsetOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t s = 1 + rng() % 3, t = 1 + rng() % 3;
    const auto q = test::random_pattern(s, t, rng());
    const std::size_t m = s + rng() % 5, n = t + rng() % 5;
    EXPECT_EQ(minimal_forcing(m, n, q), oracle::minimal_forcing(m, n, q)) << q;
  }
}

TEST(ForcingProperty, MonotoneUnderEntrywiseOrder) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t s = 1 + rng() % 4, t = 1 + rng() % 4;
    const auto big = test::random_pattern(s, t, rng());
    auto small = big;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < t; ++j)
        if (rng() % 3 == 0) small.set(i, j, false);
    if (small.all_zero()) continue;
    const std::size_t m = s + rng() % 6, n = t + rng() % 6;
    const auto ap = minimal_forcing(m, n, small), aq = minimal_forcing(m, n, big);
    EXPECT_TRUE(entrywise_leq(ap, aq));
    EXPECT_LE(min_ones_value(m, n, small), min_ones_value(m, n, big));
  }
}

TEST(ForcingProperty, AllFormulasAgreeWithPopcount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t s = 1 + rng() % 5, t = 1 + rng() % 5;
    auto q = test::random_matrix(s, t, 0.3, rng());
    if (q.all_zero()) continue;
    const std::size_t m = s + rng() % (2 * s + 3), n = t + rng() % (2 * t + 3);
    const std::size_t truth = minimal_forcing(m, n, q).ones_count();
    if (auto v = min_ones_general(m, n, q)) {
      EXPECT_EQ(*v, truth);
    }
    if (auto v = min_ones_boundary(m, n, q)) {
      EXPECT_EQ(*v, truth);
    }
    if (auto v = min_ones_core(m, n, q)) {
      EXPECT_EQ(*v, truth);
    }
    if (m >= 2 * s && n >= 2 * t) {
      EXPECT_EQ(construct_A_mnQ(m, n, q), minimal_forcing(m, n, q));
    }
  }
}

TEST(ForcingProperty, CornerSetsAreYoungDiagrams) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t s = 1 + rng() % 6, t = 1 + rng() % 6;
    const auto q = test::random_matrix(s, t, 0.3, rng());
    const auto rep = corner_functions(q);
    for (const auto* shape : {&rep.nw_shape, &rep.ne_shape, &rep.se_shape, &rep.sw_shape}) {
      EXPECT_TRUE(std::is_sorted(shape->rbegin(), shape->rend())) << q;
    }
    auto sum = [](const std::vector<std::size_t>& v) {
      std::size_t total = 0;
      for (auto x : v) total += x;
      return total;
    };
    EXPECT_EQ(sum(rep.nw_shape), rep.nw.size());
    EXPECT_EQ(sum(rep.ne_shape), rep.ne.size());
    EXPECT_EQ(sum(rep.se_shape), rep.se.size());
    EXPECT_EQ(sum(rep.sw_shape), rep.sw.size());

    // Members are zeros and each set is closed under its domination order.
    const auto nw = as_set(rep.nw), se = as_set(rep.se), ne = as_set(rep.ne), sw = as_set(rep.sw);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        const Position p{i, j};
        for (const auto& z : rep.nw) {
          EXPECT_FALSE(q(z));
          if (dominates(z, p)) {
            EXPECT_TRUE(nw.count(p));
          }
        }
        for (const auto& z : rep.se)
          if (dominates(p, z)) {
            EXPECT_TRUE(se.count(p));
          }
        for (const auto& z : rep.ne)
          if (alt_dominates(p, z)) {
            EXPECT_TRUE(ne.count(p));
          }
        for (const auto& z : rep.sw)
          if (alt_dominates(z, p)) {
            EXPECT_TRUE(sw.count(p));
          }
      }
    }
  }
}

TEST(ForcingProperty, PermutationCornersDisjointAndBounded) {
  for (std::size_t k = 1; k <= 6; ++k) {
    for (const auto& p : all_permutation_matrices(k)) {
      const auto rep = corner_functions(p);
      std::set<Position> seen;
      std::size_t total = 0;
      for (const auto* set : {&rep.nw, &rep.ne, &rep.se, &rep.sw}) {
        for (const auto& z : *set) seen.insert(z);
        total += set->size();
      }
      EXPECT_EQ(seen.size(), total) << p;
      EXPECT_LE(total, k * (k - 1));
    }
  }
}

TEST(ForcingProperty, NonMonotoneAcrossDimensions) {
  const BitMatrix q1{{1}};
  const BitMatrix q2{{1, 0}, {0, 0}};
  const BitMatrix q3{{1, 1, 1, 1}, {1, 1, 0, 1}, {1, 0, 0, 1}, {1, 1, 1, 1}};
  for (std::size_t m = 4; m <= 12; ++m) {
    for (std::size_t n = 4; n <= 12; ++n) {
      const auto v1 = min_ones_value(m, n, q1), v2 = min_ones_value(m, n, q2), v3 = min_ones_value(m, n, q3);
      EXPECT_EQ(v1, m * n);
      EXPECT_GT(v1, v2);
      EXPECT_GT(v3, v2);
    }
  }
}

}  // namespace
}  // namespace mforce
