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

#include "oracle.hpp"
#include "votesweep/model.hpp"

namespace votesweep {
namespace {

PredictionRun make_run(std::string id, std::vector<std::pair<std::string, Label>> preds) {
  PredictionRun run{std::move(id), "camelbert", "post", {}};
  for (auto& [sid, label] : preds) run.predictions.push_back({sid, label, {}});
  return run;
}

GroundTruth truth_of(std::vector<std::string> ids, std::size_t classes = 3) {
  std::vector<TruthEntry> entries;
  for (auto& id : ids) entries.push_back({id, 0});
  return GroundTruth(std::move(entries), classes);
}

TEST(LabelSetTest, IndicesFollowOrder) {
  const LabelSet labels({"Internal Medicine", "Orthopedics", "Neurosurgery"});
  EXPECT_EQ(labels.size(), 3U);
  EXPECT_EQ(labels.find("Orthopedics"), 1);
  EXPECT_EQ(labels.name(2), "Neurosurgery");
  EXPECT_FALSE(labels.find("orthopedics").has_value());
}

TEST(LabelSetTest, ArabicNamesMatchExactly) {
  const LabelSet labels({"باطنة", "عظام"});
  EXPECT_EQ(labels.find("عظام"), 1);
}

TEST(LabelSetTest, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(LabelSet({}), Error);
  EXPECT_THROW(LabelSet({"a", "a"}), Error);
  EXPECT_THROW(LabelSet({"a", ""}), Error);
}

TEST(GroundTruthTest, RejectsDuplicateIdsAndBadLabels) {
  try {
    GroundTruth({{"s1", 0}, {"s1", 1}, {"s2", 5}}, 3);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(ErrorCode::kDuplicateSampleId));
    EXPECT_TRUE(e.has(ErrorCode::kUnknownLabel));
  }
}

TEST(AlignTest, StrictExactCover) {
  const auto truth = truth_of({"s1", "s2", "s3"});
  const LabelSet labels({"a", "b", "c"});
  std::vector<PredictionRun> runs{
      make_run("x", {{"s1", 0}, {"s2", 1}, {"s3", 2}}),
      make_run("y", {{"s3", 2}, {"s1", 1}, {"s2", 0}}),
      make_run("z", {{"s2", 1}, {"s3", 1}, {"s1", 1}}),
  };
  const RunSet set = align(runs, truth, labels);
  EXPECT_EQ(set.size(), 3U);
  EXPECT_EQ(set.sample_count(), 3U);
  EXPECT_EQ(set.dropped_samples(), 0U);
  // Labels follow truth order, not file order.
  EXPECT_EQ(set.run(1).labels, (std::vector<Label>{1, 0, 2}));
}

TEST(AlignTest, StrictMissingSamples) {
  const auto truth = truth_of({"s1", "s2", "s3"});
  const LabelSet labels({"a", "b", "c"});
  std::vector<PredictionRun> runs{make_run("x", {{"s1", 0}, {"s2", 1}})};
  try {
    align(runs, truth, labels);
    FAIL() << "expected MissingSamples";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1U);
    EXPECT_EQ(e.diagnostics()[0].code, ErrorCode::kMissingSamples);
    EXPECT_NE(e.diagnostics()[0].message.find("lacks 1"), std::string::npos);
  }
}

TEST(AlignTest, StrictReportsEveryRun) {
  const auto truth = truth_of({"s1", "s2"});
  const LabelSet labels({"a", "b", "c"});
  std::vector<PredictionRun> runs{make_run("x", {{"s1", 0}}),
                                  make_run("y", {{"s1", 0}, {"s2", 0}, {"s9", 0}}),
                                  make_run("z", {{"s1", 7}, {"s2", 0}})};
  try {
    align(runs, truth, labels);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(ErrorCode::kUnknownLabel));
  }
  runs.pop_back();
  try {
    align(runs, truth, labels);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(ErrorCode::kMissingSamples));
    EXPECT_TRUE(e.has(ErrorCode::kExtraSamples));
  }
}

TEST(AlignTest, IntersectDropsUncoveredSamples) {
  const auto truth = truth_of({"s1", "s2", "s3", "s4"});
  const LabelSet labels({"a", "b", "c"});
  std::vector<PredictionRun> runs{
      make_run("x", {{"s1", 0}, {"s2", 1}, {"s3", 2}}),
      make_run("y", {{"s2", 2}, {"s3", 1}, {"s4", 0}}),
  };
  const RunSet set = align(runs, truth, labels, AlignMode::kIntersect);
  ASSERT_EQ(set.sample_count(), 2U);
  EXPECT_EQ(set.truth().entries()[0].sample_id, "s2");
  EXPECT_EQ(set.truth().entries()[1].sample_id, "s3");
  EXPECT_EQ(set.dropped_samples(), 2U);
  EXPECT_EQ(set.run(0).labels, (std::vector<Label>{1, 2}));
  EXPECT_EQ(set.run(1).labels, (std::vector<Label>{2, 1}));
}

TEST(AlignTest, IntersectEmpty) {
  const auto truth = truth_of({"s1", "s2"});
  const LabelSet labels({"a", "b", "c"});
  std::vector<PredictionRun> runs{make_run("x", {{"s1", 0}}), make_run("y", {{"s2", 0}})};
  try {
    align(runs, truth, labels, AlignMode::kIntersect);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyIntersection);
  }
}

TEST(AlignTest, EmptyTruthRejected) {
  const LabelSet labels({"a"});
  std::vector<PredictionRun> runs{make_run("x", {})};
  EXPECT_THROW(align(runs, GroundTruth({}, 1), labels), Error);
}

TEST(AlignTest, ConfidenceInvariants) {
  const auto truth = truth_of({"s1", "s2"});
  const LabelSet labels({"a", "b", "c"});
  PredictionRun run{"x", "arabert", "ner", {}};
  run.predictions.push_back({"s1", 2, {0.2, 0.2, 0.6}});
  run.predictions.push_back({"s2", 0, {0.5, 0.3, 0.2}});
  std::vector<PredictionRun> ok{run};
  EXPECT_NO_THROW(align(ok, truth, labels));

  auto bad_sum = run;
  bad_sum.predictions[1].confidence = {0.5, 0.2, 0.2};
  auto bad_argmax = run;
  bad_argmax.predictions[1].confidence = {0.2, 0.6, 0.2};
  auto partial = run;
  partial.predictions[1].confidence.clear();
  for (const auto& [r, code] : {std::pair{bad_sum, ErrorCode::kConfidenceMismatch},
                                {bad_argmax, ErrorCode::kConfidenceMismatch},
                                {partial, ErrorCode::kSchemaError}}) {
    std::vector<PredictionRun> runs{r};
    try {
      align(runs, truth, labels);
      FAIL();
    } catch (const ValidationError& e) {
      EXPECT_TRUE(e.has(code)) << e.what();
    }
  }
}

TEST(AlignTest, IdempotentOnAlignedRunSet) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunSet set = testing::random_runset(seed, 4, 30, 4, seed % 2 == 0);
    const RunSet again = align(set.to_prediction_runs(), set.truth(), set.labels());
    EXPECT_EQ(again, set);
    const RunSet intersect =
        align(set.to_prediction_runs(), set.truth(), set.labels(), AlignMode::kIntersect);
    EXPECT_EQ(intersect, set);
  }
}

TEST(EnsembleSpecTest, BitIndexBijection) {
  for (std::size_t n : {1U, 5U, 12U, 64U}) {
    for (std::size_t i = 0; i < n; ++i) {
      const EnsembleSpec one(EnsembleSpec::Mask{1} << i, n);
      EXPECT_EQ(one.members(), std::vector<std::size_t>{i});
      EXPECT_TRUE(one.contains(i));
    }
    const auto all = EnsembleSpec::all(n);
    EXPECT_EQ(all.size(), n);
    const auto members = all.members();
    EXPECT_EQ(EnsembleSpec::of(members, n), all);
  }
}

TEST(EnsembleSpecTest, RejectsEmptyAndOutOfRange) {
  EXPECT_THROW(EnsembleSpec(0, 3), Error);
  EXPECT_THROW(EnsembleSpec(0b1000, 3), Error);
  EXPECT_NO_THROW(EnsembleSpec(0b100, 3));
}

TEST(TiePolicyTest, NamesRoundTrip) {
  for (auto p : {TiePolicy::kLowestLabelIndex, TiePolicy::kPriorityOrder,
                 TiePolicy::kHighestMeanConfidence, TiePolicy::kAbstain}) {
    EXPECT_EQ(parse_tie_policy(to_string(p)), p);
  }
  EXPECT_FALSE(parse_tie_policy("random").has_value());
}

}  // namespace
}  // namespace votesweep
