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

#ifndef VOTESWEEP_GROUPING_HPP_
#define VOTESWEEP_GROUPING_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votesweep/metrics.hpp"
#include "votesweep/model.hpp"

namespace votesweep {

enum class GroupKey { kRepresentation, kFamily };

std::string_view to_string(GroupKey key);
std::optional<GroupKey> parse_group_key(std::string_view text);

struct TaggedGroup {
  std::string tag;
  EnsembleSpec ensemble;
};

// Partitions the runs by tag. Groups appear in order of the tag's first
// appearance in manifest order; "other" is a group like any other tag.
std::vector<TaggedGroup> group_runs(const RunSet& runs, GroupKey key);

struct GroupResult {
  std::string tag;
  EnsembleSpec ensemble;
  std::vector<std::string> members;
  MetricsBundle metrics;
};

struct GroupReport {
  GroupKey key = GroupKey::kRepresentation;
  std::vector<GroupResult> groups;
};

GroupReport evaluate_groups(const RunSet& runs, GroupKey key,
                            TiePolicy policy = TiePolicy::kLowestLabelIndex);

}  // namespace votesweep

#endif  // VOTESWEEP_GROUPING_HPP_
