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

#include "votesweep/grouping.hpp"

#include <utility>

#include "votesweep/voting.hpp"

namespace votesweep {

std::string_view to_string(GroupKey key) {
  return key == GroupKey::kRepresentation ? "representation" : "family";
}

std::optional<GroupKey> parse_group_key(std::string_view text) {
  if (text == "representation") return GroupKey::kRepresentation;
  if (text == "family") return GroupKey::kFamily;
  return std::nullopt;
}

std::vector<TaggedGroup> group_runs(const RunSet& runs, GroupKey key) {
  std::vector<std::string> tags;
  std::vector<EnsembleSpec::Mask> masks;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs.run(i);
    const std::string& tag =
        key == GroupKey::kRepresentation ? r.representation : r.family;
    std::size_t g = 0;
    while (g < tags.size() && tags[g] != tag) ++g;
    if (g == tags.size()) {
      tags.push_back(tag);
      masks.push_back(0);
    }
    masks[g] |= EnsembleSpec::Mask{1} << i;
  }

  std::vector<TaggedGroup> groups;
  groups.reserve(tags.size());
  for (std::size_t g = 0; g < tags.size(); ++g) {
    groups.push_back({std::move(tags[g]), EnsembleSpec(masks[g], runs.size())});
  }
  return groups;
}

GroupReport evaluate_groups(const RunSet& runs, GroupKey key, TiePolicy policy) {
  GroupReport report;
  report.key = key;
  for (auto& group : group_runs(runs, key)) {
    std::vector<std::string> members;
    for (std::size_t i : group.ensemble.members()) {
      members.push_back(runs.run(i).run_id);
    }
    MetricsBundle metrics =
        evaluate(fuse(group.ensemble, runs, policy), runs.truth());
    report.groups.push_back({std::move(group.tag), group.ensemble,
                             std::move(members), std::move(metrics)});
  }
  return report;
}

}  // namespace votesweep
