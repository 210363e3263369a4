#include "mforce/oracle.hpp"

#include "gtest/gtest.h"
#include "mforce/forcing.hpp"
#include "test_util.hpp"

namespace mforce {
namespace {

TEST(OracleTest, Binomial) {
  EXPECT_EQ(oracle::binomial(5, 2), 10u);
  EXPECT_EQ(oracle::binomial(7, 0), 1u);
  EXPECT_EQ(oracle::binomial(3, 4), 0u);
  EXPECT_EQ(oracle::binomial(40, 20), 137846528820u);
}

TEST(OracleTest, SubsetsInLexicographicOrder) {
  std::vector<std::vector<std::size_t>> seen;
  oracle::for_each_subset(4, 2, [&](const std::vector<std::size_t>& s) { seen.push_back(s); });
  const std::vector<std::vector<std::size_t>> want{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(seen, want);
}

TEST(OracleTest, CapIsEnforced) {
  EXPECT_THROW(oracle::minimal_forcing(30, 30, identity(3), 1000), oracle::CapExceeded);
  EXPECT_THROW(oracle::is_strongly_forcing(all_ones(30), identity(3), 1000), oracle::CapExceeded);
  EXPECT_THROW(oracle::max_strong(5, identity(2)), oracle::CapExceeded);
  EXPECT_THROW(oracle::max_strong(2, identity(3)), std::invalid_argument);
}

TEST(OracleTest, SmallTruths) {
  EXPECT_EQ(oracle::minimal_forcing(3, 3, BitMatrix{{1}}), all_ones(3));
  EXPECT_TRUE(oracle::is_forcing(all_ones(4), identity(2)));
  EXPECT_FALSE(oracle::is_forcing(identity(4), identity(2)));
  EXPECT_TRUE(oracle::is_strongly_forcing(complement(hankel(3)), identity(2)));
  EXPECT_FALSE(oracle::is_strongly_forcing(all_ones(3), identity(2)));
  EXPECT_TRUE(oracle::is_strongly_forcing(BitMatrix(3, 3), identity(2)));
}

TEST(OracleTest, MaxStrongIdentityTwo) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = oracle::max_strong(n, identity(2));
    EXPECT_EQ(r.best_ones, n * n - n);
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses.front(), complement(hankel(n)));
  }
}

TEST(OracleTest, MaxStrongThreeByThree) {
  for (const auto& p : all_permutation_matrices(3)) {
    EXPECT_EQ(oracle::max_strong(3, p).best_ones, 3u);
    EXPECT_EQ(oracle::max_strong(4, p).best_ones, 7u);
  }
  // n = 3 has the pattern itself as its only extremal matrix.
  EXPECT_EQ(oracle::max_strong(3, identity(3)).witnesses, std::vector<BitMatrix>{identity(3)});
}

}  // namespace
}  // namespace mforce
