#include "mforce/search.hpp"

#include "gtest/gtest.h"
#include "mforce/json_io.hpp"
#include "mforce/oracle.hpp"
#include "test_util.hpp"

namespace mforce {
namespace {

SearchConfig all_extremal() {
  SearchConfig c;
  c.enumerate_all_extremal = true;
  return c;
}

std::vector<BitMatrix> three_by_three_permutations() { return all_permutation_matrices(3); }

TEST(SearchTest, IdentityTwoAtFour) {
  const auto out = search_max(4, identity(2), all_extremal());
  EXPECT_EQ(out.status, SearchStatus::exact);
  EXPECT_EQ(out.best_ones, 12u);
  EXPECT_EQ(out.upper_bound, 12u);
  ASSERT_EQ(out.witnesses.size(), 1u);
  EXPECT_EQ(out.witnesses.front(), complement(hankel(4)));
}

TEST(SearchTest, IdentityThree) {
  EXPECT_EQ(search_max(4, identity(3)).best_ones, 7u);
  const auto out = search_max(3, identity(3), all_extremal());
  EXPECT_EQ(out.status, SearchStatus::exact);
  EXPECT_EQ(out.best_ones, 3u);
  EXPECT_NE(std::find(out.witnesses.begin(), out.witnesses.end(), identity(3)), out.witnesses.end());
}

TEST(SearchTest, AllOnePatternGivesAllOnes) {
  const auto out = search_max(5, BitMatrix{{1}});
  EXPECT_EQ(out.status, SearchStatus::exact);
  EXPECT_EQ(out.best_ones, 25u);
}

TEST(SearchTest, MatchesOracleForSmallPermutationsAndN) {
  std::vector<BitMatrix> patterns{identity(2), hankel(2)};
  for (auto& p : three_by_three_permutations()) patterns.push_back(p);
  for (const auto& q : patterns) {
    for (std::size_t n = q.rows(); n <= 4; ++n) {
      const auto truth = oracle::max_strong(n, q);
      const auto out = search_max(n, q, all_extremal());
      EXPECT_EQ(out.status, SearchStatus::exact);
      EXPECT_EQ(out.best_ones, truth.best_ones) << q << " n=" << n;
      EXPECT_EQ(out.witnesses, truth.witnesses) << q << " n=" << n;
    }
  }
}

TEST(SearchTest, MatchesOracleForIrregularPatterns) {
  const std::vector<BitMatrix> patterns{BitMatrix{{1, 0}, {1, 1}}, BitMatrix{{1, 0, 1}}, BitMatrix{{0, 1}, {0, 0}},
                                        BitMatrix{{1, 1}, {0, 1}, {1, 0}}};
  for (const auto& q : patterns) {
    for (std::size_t n = std::max(q.rows(), q.cols()); n <= 4; ++n) {
      const auto truth = oracle::max_strong(n, q);
      const auto out = search_max(n, q, all_extremal());
      EXPECT_EQ(out.best_ones, truth.best_ones) << q << " n=" << n;
      EXPECT_EQ(out.witnesses, truth.witnesses) << q << " n=" << n;
    }
  }
}

TEST(SearchTest, DihedralReductionGivesSameWitnessSet) {
  SearchConfig reduced = all_extremal();
  reduced.use_dihedral_reduction = true;
  for (const auto& q : {identity(3), permutation_matrix("132"), identity(2)}) {
    const auto plain = search_max(5, q, all_extremal());
    const auto fast = search_max(5, q, reduced);
    EXPECT_EQ(plain.best_ones, fast.best_ones);
    EXPECT_EQ(plain.witnesses, fast.witnesses);
    // First-found witness is identical with and without reduction.
    SearchConfig one;
    one.use_dihedral_reduction = true;
    EXPECT_EQ(search_max(5, q).witnesses, search_max(5, q, one).witnesses);
  }
}

TEST(SearchTest, DeterministicAcrossThreadCounts) {
  for (const auto& q : {identity(3), permutation_matrix("231")}) {
    SearchConfig c1 = all_extremal(), c4 = all_extremal();
    c1.threads = 1;
    c4.threads = 4;
    const auto a = search_max(5, q, c1), b = search_max(5, q, c4);
    EXPECT_EQ(a.best_ones, b.best_ones);
    EXPECT_EQ(a.witnesses, b.witnesses);
    SearchConfig f1, f3;
    f1.threads = 1;
    f3.threads = 3;
    EXPECT_EQ(search_max(5, q, f1).witnesses, search_max(5, q, f3).witnesses);
  }
}

TEST(SearchTest, WitnessesAreStronglyForcing) {
  for (const auto& q : three_by_three_permutations()) {
    const auto out = search_max(5, q, all_extremal());
    ASSERT_EQ(out.status, SearchStatus::exact);
    EXPECT_EQ(out.best_ones, 13u);
    for (const auto& w : out.witnesses) {
      EXPECT_EQ(w.ones_count(), out.best_ones);
      EXPECT_TRUE(is_strongly_forcing(w, q));
      EXPECT_TRUE(oracle::is_strongly_forcing(w, q));
      EXPECT_LE(w.ones_count(), upper_bound_3x3(5));
      EXPECT_LE(w.ones_count(), upper_bound_simple(5, 3));
    }
  }
}

TEST(SearchTest, BudgetExhaustionReportsConstructionBound) {
  SearchConfig c;
  c.node_budget = 50;
  const auto out = search_max(6, identity(4), c);
  EXPECT_EQ(out.status, SearchStatus::budget_exhausted);
  EXPECT_GE(out.best_ones, 14u);
  EXPECT_GE(out.upper_bound, out.best_ones);
  for (const auto& w : out.witnesses) EXPECT_TRUE(is_strongly_forcing(w, identity(4)));
}

TEST(SearchTest, LargeAmbientFallsBackToConstructions) {
  const auto out = search_max(10, identity(3));
  EXPECT_EQ(out.status, SearchStatus::lower_bound_only);
  EXPECT_EQ(out.best_ones, upper_bound_3x3(10));
  EXPECT_EQ(out.upper_bound, upper_bound_simple(10, 3));
}

TEST(SearchTest, Preconditions) {
  EXPECT_THROW(search_max(2, identity(3)), std::invalid_argument);
  EXPECT_THROW(search_max(3, BitMatrix(2, 2)), std::invalid_argument);
  SearchConfig c;
  c.node_budget = 0;
  EXPECT_THROW(search_max(3, identity(2), c), std::invalid_argument);
}

TEST(SearchTest, NeverBelowBestConstruction) {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (const auto& q : {identity(2), identity(3), hankel(3), permutation_matrix("312")}) {
      if (n < q.rows()) continue;
      const auto out = search_max(n, q);
      EXPECT_GE(out.best_ones, known_constructions(n, q).front().ones_count());
    }
  }
}

TEST(KnownConstructionsTest, CoversWholeDihedralClass) {
  for (const auto& q : three_by_three_permutations()) {
    const auto cons = known_constructions(7, q);
    EXPECT_EQ(cons.front().ones_count(), upper_bound_3x3(7)) << q;
  }
  EXPECT_EQ(known_constructions(6, hankel(4)).front().ones_count(), conjecture_value(6, 4));
}

TEST(ResultsCacheTest, RoundTripAndExactPreference) {
  const auto path = std::filesystem::temp_directory_path() / "mforce_cache_test.json";
  std::filesystem::remove(path);
  const auto out = search_max(4, identity(3));
  {
    ResultsCache cache(path);
    cache.put(cache_key(4, identity(3)), out);
    SearchOutcome weaker = out;
    weaker.status = SearchStatus::budget_exhausted;
    weaker.best_ones = 1;
    cache.put(cache_key(4, identity(3)), weaker);
    cache.put(cache_key(4, hankel(3)), out);
    cache.save();
  }
  ResultsCache again(path);
  const auto got = again.get("4,3");
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(got->status, SearchStatus::exact);
  EXPECT_EQ(got->best_ones, 7u);
  EXPECT_EQ(got->witnesses, out.witnesses);
  const auto table = again.identity_values();
  EXPECT_EQ(table.size(), 1u);
  EXPECT_EQ(table.at({4, 3}), 7u);
  EXPECT_NE(cache_key(4, hankel(3)), cache_key(4, identity(3)));
  std::filesystem::remove(path);
}

TEST(JsonTest, OutcomeShape) {
  const auto j = to_json(search_max(4, identity(2)));
  EXPECT_EQ(j.at("status"), "exact");
  EXPECT_EQ(j.at("best_ones"), 12);
  EXPECT_EQ(j.at("witnesses").size(), 1u);
  EXPECT_EQ(parse(j.at("witnesses")[0].get<std::string>()), complement(hankel(4)));
  EXPECT_TRUE(j.contains("nodes_explored"));
  EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(JsonTest, CornerAndCoreReports) {
  const auto rep = to_json(corner_functions(identity(2)));
  EXPECT_EQ(rep.at("ne"), json::parse("[[1,2]]"));
  EXPECT_EQ(rep.at("sw"), json::parse("[[2,1]]"));
  EXPECT_EQ(rep.at("nw_shape"), json::array());
  const auto core_json = to_json(core(test::fixture("padded_q.txt")));
  EXPECT_EQ(core_json.at("top_zero_rows"), 3);
  EXPECT_EQ(core_json.at("right_zero_cols"), 1);
  EXPECT_EQ(parse(core_json.at("core").get<std::string>()), test::fixture("padded_core.txt"));
}

}  // namespace
}  // namespace mforce
