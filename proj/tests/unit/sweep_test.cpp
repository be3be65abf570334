/*
 * Copyright 2026 The votesweep Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "checks.hpp"
#include "oracle.hpp"
#include "votesweep/ingest.hpp"
#include "votesweep/sweep.hpp"

namespace votesweep {
namespace {

std::vector<EnsembleSpec::Mask> masks_of(const std::vector<EnsembleSpec>& specs) {
  std::vector<EnsembleSpec::Mask> out;
  for (const auto& s : specs) out.push_back(s.mask());
  return out;
}

TEST(BinomialTest, KnownValues) {
  EXPECT_EQ(binomial(12, 3), 220U);
  EXPECT_EQ(binomial(12, 6), 924U);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
  EXPECT_EQ(binomial(5, 0), 1U);
  EXPECT_EQ(binomial(3, 4), 0U);
}

TEST(CombinationsTest, ThreeChooseTwo) {
  EXPECT_EQ(masks_of(enumerate_combinations(3, 2)),
            (std::vector<EnsembleSpec::Mask>{0b011, 0b101, 0b110}));
}

TEST(CombinationsTest, FullSizeIsSingleMask) {
  EXPECT_EQ(masks_of(enumerate_combinations(12, 12)), std::vector<EnsembleSpec::Mask>{0xFFF});
  std::size_t count = 0;
  for_each_combination(64, 64, [&](EnsembleSpec::Mask m) {
    EXPECT_EQ(m, ~EnsembleSpec::Mask{0});
    ++count;
  });
  EXPECT_EQ(count, 1U);
}

TEST(CombinationsTest, RejectsBadSizes) {
  EXPECT_THROW(enumerate_combinations(3, 0), Error);
  EXPECT_THROW(enumerate_combinations(3, 4), Error);
  EXPECT_THROW(enumerate_combinations(65, 1), Error);
}

TEST(CombinationsTest, CountsAndOrderUpToSixteen) {
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto masks = masks_of(enumerate_combinations(n, k));
      ASSERT_EQ(masks.size(), binomial(n, k)) << n << " " << k;
      EXPECT_TRUE(std::adjacent_find(masks.begin(), masks.end(),
                                     std::greater_equal<>()) == masks.end());
      for (auto m : masks) {
        EXPECT_EQ(static_cast<std::size_t>(std::popcount(m)), k);
        EXPECT_LT(m, EnsembleSpec::Mask{1} << n);
      }
    }
  }
}

TEST(IndividualTableTest, ManifestOrder) {
  const RunSet set = testing::random_runset(7, 5, 40, 4);
  const auto rows = individual_table(set);
  ASSERT_EQ(rows.size(), 5U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].run_id, set.run(i).run_id);
    EXPECT_EQ(rows[i].score.correct,
              testing::oracle_accuracy(set, EnsembleSpec::Mask{1} << i,
                                       TiePolicy::kLowestLabelIndex)
                  .correct);
  }
}

TEST(SweepTest, TopNTruncatesButCountsAll) {
  const RunSet set = testing::random_runset(3, 12, 30, 3);
  const SweepReport r = sweep_size(set, 3, {TiePolicy::kLowestLabelIndex, 10, 0});
  EXPECT_EQ(r.total_combinations, 220U);
  EXPECT_EQ(r.ranked.size(), 10U);
  EXPECT_EQ(r.size, 3U);
}

TEST(SweepTest, RejectsSizeOutOfRange) {
  const RunSet set = testing::random_runset(3, 4, 10, 3);
  EXPECT_THROW(sweep_size(set, 0), Error);
  EXPECT_THROW(sweep_size(set, 5), Error);
  EXPECT_THROW(sweep_all(set, {2, 5}), Error);
  EXPECT_THROW(sweep_all(set, {3, 2}), Error);
}

TEST(SweepTest, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n = 5 + seed % 3;
    const bool conf = seed % 2 == 0;
    const RunSet set = testing::random_runset(seed, n, 40, 3 + static_cast<int>(seed % 4), conf);
    for (std::size_t k = 1; k <= n; ++k) {
      for (auto p : {TiePolicy::kLowestLabelIndex, TiePolicy::kPriorityOrder, TiePolicy::kAbstain}) {
        std::string why;
        EXPECT_TRUE(testing::sweep_matches_oracle(set, k, p, &why)) << why;
      }
      if (conf) {
        std::string why;
        EXPECT_TRUE(testing::sweep_matches_oracle(set, k, TiePolicy::kHighestMeanConfidence, &why))
            << why;
      }
    }
  }
}

TEST(SweepTest, ThreadCountDoesNotChangeOutput) {
  const RunSet set = testing::random_runset(21, 9, 50, 4);
  const auto one = sweep_size(set, 4, {TiePolicy::kLowestLabelIndex, kKeepAll, 1});
  for (unsigned t : {2U, 3U, 8U}) {
    const auto many = sweep_size(set, 4, {TiePolicy::kLowestLabelIndex, kKeepAll, t});
    ASSERT_EQ(many.ranked.size(), one.ranked.size());
    for (std::size_t i = 0; i < one.ranked.size(); ++i) {
      EXPECT_EQ(many.ranked[i].ensemble, one.ranked[i].ensemble);
      EXPECT_EQ(many.ranked[i].score, one.ranked[i].score);
    }
  }
}

TEST(SweepAllTest, TwelveRunFixtureSizesTwoToTwelve) {
  const Workspace ws = load_workspace(testing::fixture_dir() / "twelve_runs" / "manifest.json");
  const SweepAll all = sweep_all(ws.runs, {2, 12}, {TiePolicy::kLowestLabelIndex, 10, 0});
  EXPECT_EQ(all.total_evaluations, 4083U);
  ASSERT_EQ(all.best.best.size(), 11U);
  ASSERT_EQ(all.per_size.size(), 11U);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_EQ(all.best.best[i].ensemble.size(), i + 2);
    EXPECT_EQ(all.best.best[i].ensemble, all.per_size[i].ranked.front().ensemble);
  }
}

TEST(SweepAllTest, SizeOneBestIsBestIndividual) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RunSet set = testing::random_runset(seed, 6, 50, 4);
    const auto all = sweep_all(set, {1, 1});
    std::size_t best = 0;
    for (const auto& row : individual_table(set)) best = std::max(best, row.score.correct);
    EXPECT_EQ(all.best.best.front().score.correct, best);
  }
}

TEST(SweepPropertyTest, SamplePermutationInvariant) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RunSet set = testing::random_runset(seed, 6, 40, 4);
    std::vector<TruthEntry> entries(set.truth().entries().begin(), set.truth().entries().end());
    std::mt19937_64 rng(seed);
    std::shuffle(entries.begin(), entries.end(), rng);
    const RunSet moved =
        align(set.to_prediction_runs(), GroundTruth(entries, set.class_count()), set.labels());
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto a = sweep_size(set, k, {TiePolicy::kLowestLabelIndex, kKeepAll, 0});
      const auto b = sweep_size(moved, k, {TiePolicy::kLowestLabelIndex, kKeepAll, 0});
      ASSERT_EQ(a.ranked.size(), b.ranked.size());
      for (std::size_t i = 0; i < a.ranked.size(); ++i) {
        EXPECT_EQ(a.ranked[i].ensemble, b.ranked[i].ensemble);
        EXPECT_EQ(a.ranked[i].score, b.ranked[i].score);
      }
    }
  }
}

TEST(SweepPropertyTest, DuplicateRunsNeverLoseToSingle) {
  // Three copies of the best run: {A, A, A} scores exactly like A, so the
  // size-3 best is at least the best individual.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const RunSet base = testing::random_runset(seed, 4, 60, 5);
    auto runs = base.to_prediction_runs();
    const auto rows = individual_table(base);
    const auto best = std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) {
      return a.score.correct < b.score.correct;
    });
    auto copy = runs[static_cast<std::size_t>(best - rows.begin())];
    for (int i = 0; i < 2; ++i) {
      copy.run_id = "dup" + std::to_string(i);
      runs.push_back(copy);
    }
    const RunSet set = align(runs, base.truth(), base.labels());
    EXPECT_GE(sweep_size(set, 3).ranked.front().score.correct, best->score.correct);
  }
}

}  // namespace
}  // namespace votesweep
