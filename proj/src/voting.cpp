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

#include "votesweep/voting.hpp"

#include <algorithm>
#include <string>

namespace votesweep {
namespace {

// Settles a tie among the classes holding `top` votes. `confidence_of(i)`
// returns member i's confidence vector.
template <typename ConfidenceOf>
Label resolve_tie(std::span<const std::size_t> counts, std::size_t top,
                  std::span<const Label> votes, ConfidenceOf&& confidence_of,
                  TiePolicy policy) {
  const auto tied = [&](Label c) {
    return counts[static_cast<std::size_t>(c)] == top;
  };
  switch (policy) {
    case TiePolicy::kLowestLabelIndex:
      break;
    case TiePolicy::kPriorityOrder:
      for (Label v : votes) {
        if (tied(v)) return v;
      }
      break;
    case TiePolicy::kHighestMeanConfidence: {
      // Sums share the member count, so comparing sums compares means.
      Label best = kAbstain;
      double best_sum = 0.0;
      for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] != top) continue;
        double sum = 0.0;
        for (std::size_t i = 0; i < votes.size(); ++i) sum += confidence_of(i)[c];
        if (best == kAbstain || sum > best_sum) {
          best = static_cast<Label>(c);
          best_sum = sum;
        }
      }
      return best;
    }
    case TiePolicy::kAbstain:
      return kAbstain;
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == top) return static_cast<Label>(c);
  }
  return kAbstain;
}

struct Tally {
  std::size_t top = 0;
  Label winner = kAbstain;
  bool tied = false;
};

Tally tally(std::span<const std::size_t> counts) {
  Tally t;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > t.top) {
      t.top = counts[c];
      t.winner = static_cast<Label>(c);
      t.tied = false;
    } else if (counts[c] == t.top && t.top > 0) {
      t.tied = true;
    }
  }
  return t;
}

}  // namespace

std::vector<std::size_t> vote_counts(std::span<const Label> votes,
                                     std::size_t class_count) {
  std::vector<std::size_t> counts(class_count, 0);
  for (Label v : votes) ++counts[static_cast<std::size_t>(v)];
  return counts;
}

Label majority_vote(const VoteContext& ctx, std::size_t class_count,
                    TiePolicy policy) {
  const std::string where = "sample \"" + std::string(ctx.sample_id) + "\"";
  if (ctx.votes.empty()) {
    throw Error(ErrorCode::kEmptyInput, where + ": no votes");
  }
  if (!ctx.members.empty()) {
    if (ctx.members.size() != ctx.votes.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  where + ": members and votes differ in length");
    }
    if (!std::is_sorted(ctx.members.begin(), ctx.members.end(),
                        std::less_equal<>{})) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": members must be strictly ascending");
    }
  }
  for (Label v : ctx.votes) {
    if (v < 0 || static_cast<std::size_t>(v) >= class_count) {
      throw Error(ErrorCode::kUnknownLabel,
                  where + ": vote " + std::to_string(v) + " out of range");
    }
  }
  if (policy == TiePolicy::kHighestMeanConfidence) {
    bool complete = ctx.confidences.size() == ctx.votes.size();
    for (std::size_t i = 0; complete && i < ctx.confidences.size(); ++i) {
      complete = ctx.confidences[i].size() == class_count;
    }
    if (!complete) {
      throw Error(ErrorCode::kMissingConfidence,
                  where + ": every member needs a confidence vector");
    }
  }

  const auto counts = vote_counts(ctx.votes, class_count);
  const Tally t = tally(counts);
  if (!t.tied) return t.winner;
  return resolve_tie(
      counts, t.top, ctx.votes,
      [&](std::size_t i) { return ctx.confidences[i]; }, policy);
}

FusedPredictions fuse(const EnsembleSpec& ensemble, const RunSet& runs,
                      TiePolicy policy) {
  if (runs.size() == 0 || (runs.size() < kMaxRuns &&
                              (ensemble.mask() >> runs.size()) != 0)) {
    throw Error(ErrorCode::kInvalidEnsemble,
                "ensemble does not fit a RunSet of " +
                    std::to_string(runs.size()) + " runs");
  }
  const std::vector<std::size_t> members = ensemble.members();
  const std::size_t classes = runs.class_count();
  if (policy == TiePolicy::kHighestMeanConfidence) {
    for (std::size_t m : members) {
      if (!runs.run(m).has_confidences()) {
        throw Error(ErrorCode::kMissingConfidence,
                    "run \"" + runs.run(m).run_id +
                        "\" has no confidences for highest-confidence ties");
      }
    }
  }

  std::vector<const AlignedRun*> voters;
  voters.reserve(members.size());
  for (std::size_t m : members) voters.push_back(&runs.run(m));

  FusedPredictions out;
  out.labels.resize(runs.sample_count());
  std::vector<std::size_t> counts(classes);
  std::vector<Label> votes(members.size());
  for (std::size_t s = 0; s < runs.sample_count(); ++s) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < voters.size(); ++i) {
      votes[i] = voters[i]->labels[s];
      ++counts[static_cast<std::size_t>(votes[i])];
    }
    const Tally t = tally(counts);
    if (!t.tied) {
      out.labels[s] = t.winner;
      continue;
    }
    ++out.ties;
    const Label winner = resolve_tie(
        counts, t.top, votes,
        [&](std::size_t i) { return voters[i]->confidence(s, classes); },
        policy);
    if (winner == kAbstain) ++out.abstentions;
    out.labels[s] = winner;
  }
  return out;
}

}  // namespace votesweep
