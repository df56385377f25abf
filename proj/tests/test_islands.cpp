#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "sse/islands.hpp"

using namespace sse;

namespace {

ReadSet fixture(const Bits& x, std::size_t L, std::vector<std::size_t> starts) {
  const auto p = explicit_params(x.size(), L, starts.size(), 0.0);
  return read_set_at(x, p, starts);
}

ReadSet random_reads(std::size_t n, std::size_t L, std::size_t K, double delta, std::uint64_t seed) {
  const Bits x = random_input(n, seed ^ 0xABCDEF);
  return sample_read_set(x, explicit_params(n, L, K, delta), seed);
}

}  // namespace

TEST(MergeTrueIslands, TwoIslandsHandTrace) {
  const Bits x = random_input(20, 1);
  const auto set = merge_true_islands(fixture(x, 5, {2, 5, 13}));
  ASSERT_EQ(set.islands.size(), 2u);
  EXPECT_FALSE(set.full_circle);
  EXPECT_EQ(set.islands[0].start, 2u);
  EXPECT_EQ(set.islands[0].length, 8u);
  EXPECT_EQ(set.islands[0].read_count, 2u);
  EXPECT_EQ(set.islands[1].start, 13u);
  EXPECT_EQ(set.islands[1].length, 5u);
  EXPECT_EQ(set.islands[1].read_count, 1u);
  EXPECT_EQ(set.covered(), 13u);
  EXPECT_EQ(set.erased_count, 0u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(set.islands[0].symbols[j], to_symbol(x[2 + j]));
  EXPECT_EQ(set.read_island, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(MergeTrueIslands, WrapsAroundTheCycle) {
  const Bits x = random_input(10, 2);
  const auto set = merge_true_islands(fixture(x, 4, {7, 9}));
  ASSERT_EQ(set.islands.size(), 1u);
  EXPECT_FALSE(set.full_circle);
  EXPECT_EQ(set.islands[0].start, 7u);
  EXPECT_EQ(set.islands[0].length, 6u);
  const std::size_t expected_pos[] = {7, 8, 9, 0, 1, 2};
  for (std::size_t j = 0; j < 6; ++j)
    EXPECT_EQ(set.islands[0].symbols[j], to_symbol(x[expected_pos[j]]));
}

TEST(MergeTrueIslands, CompleteCoverage) {
  const Bits x = random_input(8, 3);
  const auto set = merge_true_islands(fixture(x, 4, {0, 4}));
  EXPECT_TRUE(set.full_circle);
  ASSERT_EQ(set.islands.size(), 1u);
  EXPECT_EQ(set.islands[0].start, 0u);
  EXPECT_EQ(set.islands[0].length, 8u);
  EXPECT_EQ(set.islands[0].read_count, 2u);
  EXPECT_EQ(island_lengths(set), (std::vector<std::size_t>{8}));
}

TEST(MergeTrueIslands, FullCircleStartsAtZeroAndKeepsPositions) {
  const Bits x = random_input(12, 4);
  const auto set = merge_true_islands(fixture(x, 5, {3, 7, 11}));
  ASSERT_TRUE(set.full_circle);
  EXPECT_EQ(set.islands[0].start, 0u);
  for (std::size_t p = 0; p < 12; ++p) EXPECT_EQ(set.islands[0].symbols[p], to_symbol(x[p]));
}

TEST(MergeTrueIslands, UnionKeepsAnyUnerasedSymbol) {
  const Bits x = random_input(20, 5);
  auto rs = fixture(x, 5, {2, 5});
  rs.reads[0].symbols[3] = Symbol::erased;  // absolute position 5
  const auto set = merge_true_islands(rs);
  ASSERT_EQ(set.islands.size(), 1u);
  EXPECT_EQ(set.islands[0].symbols[3], to_symbol(x[5]));
  EXPECT_EQ(set.erased_count, 0u);

  rs.reads[1].symbols[0] = Symbol::erased;  // now erased everywhere it is covered
  const auto erased = merge_true_islands(rs);
  EXPECT_EQ(erased.islands[0].symbols[3], Symbol::erased);
  EXPECT_EQ(erased.erased_count, 1u);
}

TEST(MergeTrueIslands, DuplicateStartsCountBothReads) {
  const Bits x = random_input(30, 6);
  const auto set = merge_true_islands(fixture(x, 6, {4, 4, 20}));
  ASSERT_EQ(set.islands.size(), 2u);
  EXPECT_EQ(set.islands[0].read_count, 2u);
  EXPECT_EQ(set.islands[0].length, 6u);
}

TEST(MergeTrueIslands, EmptyReadSet) {
  ReadSet rs;
  rs.params = explicit_params(16, 4, 0, 0.0);
  const auto set = merge_true_islands(rs);
  EXPECT_TRUE(set.islands.empty());
  EXPECT_FALSE(set.full_circle);
  EXPECT_EQ(set, brute_force_islands(rs));
  EXPECT_TRUE(island_lengths(set).empty());
}

TEST(MergeTrueIslands, StrictModeSplitsExactlyAdjacentReads) {
  const Bits x = random_input(20, 7);
  const auto rs = fixture(x, 5, {0, 5});
  const auto maximal = merge_true_islands(rs, MergeMode::maximal_run);
  const auto strict = merge_true_islands(rs, MergeMode::strict_overlap);
  ASSERT_EQ(maximal.islands.size(), 1u);
  EXPECT_EQ(maximal.islands[0].length, 10u);
  ASSERT_EQ(strict.islands.size(), 2u);
  EXPECT_EQ(island_lengths(strict), (std::vector<std::size_t>{5, 5}));
  EXPECT_EQ(strict.covered(), maximal.covered());
}

TEST(MergeTrueIslands, StrictModeSingleIslandClosingOnItself) {
  const Bits x = random_input(12, 8);
  const auto set = merge_true_islands(fixture(x, 5, {2, 5, 9}), MergeMode::strict_overlap);
  ASSERT_EQ(set.islands.size(), 1u);
  EXPECT_TRUE(set.full_circle);
  EXPECT_EQ(set.islands[0].start, 2u);
  EXPECT_EQ(set.islands[0].length, 12u);
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(set.islands[0].symbols[j], to_symbol(x[(2 + j) % 12]));
}

TEST(MergeTrueIslands, StrictModeAllGapsEqualToReadLength) {
  const Bits x = random_input(10, 9);
  const auto set = merge_true_islands(fixture(x, 5, {0, 5}), MergeMode::strict_overlap);
  EXPECT_EQ(set.islands.size(), 2u);
  EXPECT_FALSE(set.full_circle);
  EXPECT_EQ(set.covered(), 10u);
}

TEST(BruteForceIslands, MatchesHandExamples) {
  const Bits x20 = random_input(20, 1), x10 = random_input(10, 2), x8 = random_input(8, 3);
  for (const auto& rs : {fixture(x20, 5, {2, 5, 13}), fixture(x10, 4, {7, 9}), fixture(x8, 4, {0, 4})})
    EXPECT_EQ(merge_true_islands(rs), brute_force_islands(rs));
}

TEST(BruteForceIslands, SingleReadIsItsOwnIsland) {
  const Bits x = random_input(16, 10);
  const auto rs = fixture(x, 5, {13});
  const auto set = brute_force_islands(rs);
  ASSERT_EQ(set.islands.size(), 1u);
  EXPECT_EQ(set.islands[0].start, 13u);
  EXPECT_EQ(set.islands[0].symbols, rs.reads[0].symbols);
  EXPECT_EQ(set.islands[0].read_count, 1u);
}

TEST(BruteForceIslands, RandomizedEquivalence) {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto rs = random_reads(64, 7, 8, 0.4, t);
    ASSERT_EQ(merge_true_islands(rs), brute_force_islands(rs)) << "trial " << t;
  }
}

TEST(BruteForceIslands, RandomizedEquivalenceDenseAndSparse) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    const auto dense = random_reads(50, 6, 30, 0.7, t);  // often full circle
    ASSERT_EQ(merge_true_islands(dense), brute_force_islands(dense)) << "dense " << t;
    const auto sparse = random_reads(500, 3, 20, 0.1, t);
    ASSERT_EQ(merge_true_islands(sparse), brute_force_islands(sparse)) << "sparse " << t;
  }
}

// Properties over random read sets.

TEST(IslandProperties, OrderInvariant) {
  std::mt19937_64 shuffler(4);
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto rs = random_reads(128, 9, 20, 0.3, t);
    const auto reference = merge_true_islands(rs);
    std::vector<std::size_t> perm(rs.reads.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), shuffler);
    ReadSet shuffled = rs;
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled.reads[i] = rs.reads[perm[i]];
    for (auto mode : {MergeMode::maximal_run, MergeMode::strict_overlap}) {
      auto a = merge_true_islands(rs, mode);
      auto b = merge_true_islands(shuffled, mode);
      for (std::size_t i = 0; i < perm.size(); ++i)
        EXPECT_EQ(a.read_island[perm[i]], b.read_island[i]);
      a.read_island.clear();
      b.read_island.clear();
      EXPECT_EQ(a, b) << "trial " << t;
    }
    EXPECT_EQ(reference.islands.size(), merge_true_islands(shuffled).islands.size());
  }
}

TEST(IslandProperties, ReadsLieInsideExactlyTheirIsland) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto rs = random_reads(200, 8, 25, 0.2, t);
    for (auto mode : {MergeMode::maximal_run, MergeMode::strict_overlap}) {
      const auto set = merge_true_islands(rs, mode);
      std::size_t total = 0;
      for (const auto& is : set.islands) total += is.read_count;
      EXPECT_EQ(total, rs.reads.size());
      for (std::size_t r = 0; r < rs.reads.size(); ++r) {
        const auto& is = set.islands[set.read_island[r]];
        const std::size_t offset = (rs.reads[r].start + set.n - is.start) % set.n;
        EXPECT_TRUE(set.full_circle || offset + rs.params.L <= is.length);
      }
    }
  }
}

TEST(IslandProperties, ErasedExactlyWhereEveryCoveringReadErases) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto rs = random_reads(150, 10, 30, 0.5, t);
    const std::size_t n = rs.params.n;
    std::vector<int> cover(n, 0), seen(n, 0);
    for (const auto& r : rs.reads)
      for (std::size_t j = 0; j < rs.params.L; ++j) {
        ++cover[(r.start + j) % n];
        if (r.symbols[j] != Symbol::erased) ++seen[(r.start + j) % n];
      }
    const auto set = merge_true_islands(rs);
    std::size_t erased = 0, covered = 0;
    for (const auto& is : set.islands)
      for (std::size_t j = 0; j < is.length; ++j) {
        const std::size_t p = (is.start + j) % n;
        ++covered;
        EXPECT_GT(cover[p], 0);
        EXPECT_EQ(is.symbols[j] == Symbol::erased, seen[p] == 0);
        erased += is.symbols[j] == Symbol::erased;
      }
    EXPECT_EQ(covered, static_cast<std::size_t>(std::count_if(cover.begin(), cover.end(),
                                                              [](int c) { return c > 0; })));
    EXPECT_EQ(erased, set.erased_count);
  }
}

TEST(IslandProperties, MaximalRunsAreDisjointAndNonAdjacent) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto rs = random_reads(300, 6, 30, 0.0, t);
    const auto set = merge_true_islands(rs);
    if (set.full_circle) continue;
    for (std::size_t i = 0; i < set.islands.size(); ++i) {
      const auto& a = set.islands[i];
      const auto& b = set.islands[(i + 1) % set.islands.size()];
      EXPECT_GE(a.length, rs.params.L);
      // gap from the end of a to the start of b is at least one position
      const std::size_t end = (a.start + a.length) % set.n;
      const std::size_t gap = (b.start + set.n - end) % set.n;
      EXPECT_GE(gap, 1u);
      if (set.islands.size() > 1) {
        EXPECT_LT(gap, set.n);
      }
    }
  }
}
