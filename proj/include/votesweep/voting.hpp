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

// Hard majority voting. Every member casts one unweighted vote per sample;
// the class with the most votes wins and ties are settled by a TiePolicy.

#ifndef VOTESWEEP_VOTING_HPP_
#define VOTESWEEP_VOTING_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "votesweep/model.hpp"

namespace votesweep {

// Per-class tally of `votes`. Every vote must be < class_count.
std::vector<std::size_t> vote_counts(std::span<const Label> votes,
                                     std::size_t class_count);

// The votes cast on one sample.
//
// `members` lists the RunSet indices of the voters in strictly ascending
// order; it may be left empty, in which case vote position is the member
// order. `confidences` is either empty or parallel to `votes`, with an empty
// span for a member that has no confidences.
struct VoteContext {
  std::string_view sample_id;
  std::span<const std::size_t> members;
  std::span<const Label> votes;
  std::span<const std::span<const double>> confidences;
};

// Returns the winning label, or kAbstain for a tie under TiePolicy::kAbstain.
// Throws MissingConfidence for kHighestMeanConfidence when any member lacks
// confidences, whether or not the sample is tied.
Label majority_vote(const VoteContext& ctx, std::size_t class_count,
                    TiePolicy policy);

struct FusedPredictions {
  // One entry per truth sample; kAbstain marks a withheld prediction.
  std::vector<Label> labels;
  // Samples whose maximal vote count was shared by two or more classes.
  std::size_t ties = 0;
  std::size_t abstentions = 0;
};

FusedPredictions fuse(const EnsembleSpec& ensemble, const RunSet& runs,
                      TiePolicy policy = TiePolicy::kLowestLabelIndex);

}  // namespace votesweep

#endif  // VOTESWEEP_VOTING_HPP_
