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

#include "votesweep/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>
#include <utility>

namespace votesweep {

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw Error(ErrorCode::kInvalidLabelSet, "label set is empty");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw Error(ErrorCode::kInvalidLabelSet,
                  "label " + std::to_string(i) + " is an empty string");
    }
    if (!index_.emplace(names_[i], static_cast<Label>(i)).second) {
      throw Error(ErrorCode::kInvalidLabelSet,
                  "duplicate label \"" + names_[i] + "\"");
    }
  }
}

const std::string& LabelSet::name(Label label) const {
  if (label < 0 || static_cast<std::size_t>(label) >= names_.size()) {
    throw Error(ErrorCode::kUnknownLabel,
                "label index " + std::to_string(label) + " out of range");
  }
  return names_[static_cast<std::size_t>(label)];
}

std::optional<Label> LabelSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroundTruth::GroundTruth(std::vector<TruthEntry> entries,
                         std::size_t class_count)
    : entries_(std::move(entries)), class_count_(class_count) {
  std::vector<Diagnostic> problems;
  labels_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.label < 0 || static_cast<std::size_t>(e.label) >= class_count_) {
      problems.push_back({ErrorCode::kUnknownLabel,
                          "truth sample \"" + e.sample_id + "\" has label index " +
                              std::to_string(e.label)});
    }
    if (!index_.emplace(e.sample_id, i).second) {
      problems.push_back({ErrorCode::kDuplicateSampleId,
                          "truth sample \"" + e.sample_id + "\" repeated"});
    }
    labels_.push_back(e.label);
  }
  raise_if_any(std::move(problems));
}

std::optional<std::size_t> GroundTruth::index_of(
    std::string_view sample_id) const {
  auto it = index_.find(std::string(sample_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PredictionRun::has_confidences() const noexcept {
  return !predictions.empty() && !predictions.front().confidence.empty();
}

bool is_family_tag(std::string_view tag) {
  return std::find(std::begin(kFamilyTags), std::end(kFamilyTags), tag) !=
         std::end(kFamilyTags);
}

bool is_representation_tag(std::string_view tag) {
  return std::find(std::begin(kRepresentationTags),
                   std::end(kRepresentationTags),
                   tag) != std::end(kRepresentationTags);
}

std::vector<Diagnostic> check_run(const PredictionRun& run,
                                  std::size_t class_count) {
  std::vector<Diagnostic> out;
  const std::string where = "run \"" + run.run_id + "\"";
  if (run.run_id.empty()) {
    out.push_back({ErrorCode::kSchemaError, "run id is empty"});
  }
  if (!is_family_tag(run.family)) {
    out.push_back({ErrorCode::kSchemaError,
                   where + ": unknown family tag \"" + run.family + "\""});
  }
  if (!is_representation_tag(run.representation)) {
    out.push_back({ErrorCode::kSchemaError, where +
                                                ": unknown representation tag \"" +
                                                run.representation + "\""});
  }

  const bool with_conf = run.has_confidences();
  std::unordered_set<std::string_view> seen;
  for (const auto& p : run.predictions) {
    const std::string at = where + ", sample \"" + p.sample_id + "\"";
    if (!seen.insert(p.sample_id).second) {
      out.push_back({ErrorCode::kSchemaError, at + ": duplicate prediction"});
    }
    if (p.label < 0 || static_cast<std::size_t>(p.label) >= class_count) {
      out.push_back({ErrorCode::kUnknownLabel,
                     at + ": label index " + std::to_string(p.label)});
      continue;
    }
    if (p.confidence.empty() == with_conf) {
      out.push_back({ErrorCode::kSchemaError,
                     at + ": confidence must be given for all samples or none"});
      continue;
    }
    if (!with_conf) continue;
    if (p.confidence.size() != class_count) {
      out.push_back({ErrorCode::kSchemaError,
                     at + ": confidence has " +
                         std::to_string(p.confidence.size()) +
                         " entries, expected " + std::to_string(class_count)});
      continue;
    }
    double sum = 0.0;
    bool finite = true;
    for (double c : p.confidence) {
      if (!std::isfinite(c) || c < 0.0) finite = false;
      sum += c;
    }
    if (!finite) {
      out.push_back({ErrorCode::kConfidenceMismatch,
                     at + ": confidence entries must be finite and >= 0"});
      continue;
    }
    if (std::abs(sum - 1.0) > kConfidenceSumTolerance) {
      out.push_back({ErrorCode::kConfidenceMismatch,
                     at + ": confidence sums to " + std::to_string(sum)});
      continue;
    }
    const double top =
        *std::max_element(p.confidence.begin(), p.confidence.end());
    if (p.confidence[static_cast<std::size_t>(p.label)] != top) {
      out.push_back({ErrorCode::kConfidenceMismatch,
                     at + ": hard label is not the confidence argmax"});
    }
  }
  return out;
}

std::span<const double> AlignedRun::confidence(std::size_t sample,
                                               std::size_t class_count) const {
  if (confidences.empty()) return {};
  return std::span<const double>(confidences).subspan(sample * class_count,
                                                      class_count);
}

std::string_view to_string(AlignMode mode) {
  return mode == AlignMode::kStrict ? "strict" : "intersect";
}

std::optional<AlignMode> parse_align_mode(std::string_view text) {
  if (text == "strict") return AlignMode::kStrict;
  if (text == "intersect") return AlignMode::kIntersect;
  return std::nullopt;
}

RunSet::RunSet(LabelSet labels, GroundTruth truth, std::vector<AlignedRun> runs,
               std::size_t dropped_samples)
    : labels_(std::move(labels)),
      truth_(std::move(truth)),
      runs_(std::move(runs)),
      dropped_(dropped_samples) {
  if (runs_.size() > kMaxRuns) {
    throw Error(ErrorCode::kInvalidSize,
                std::to_string(runs_.size()) + " runs exceed the limit of " +
                    std::to_string(kMaxRuns));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& r : runs_) {
    if (!ids.insert(r.run_id).second) {
      throw Error(ErrorCode::kDuplicateRunId, "run \"" + r.run_id + "\"");
    }
    if (r.labels.size() != truth_.size() ||
        (r.has_confidences() &&
         r.confidences.size() != truth_.size() * labels_.size())) {
      throw Error(ErrorCode::kLengthMismatch,
                  "run \"" + r.run_id + "\" is not aligned to the truth");
    }
  }
}

std::optional<std::size_t> RunSet::find(std::string_view run_id) const {
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].run_id == run_id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> RunSet::run_ids() const {
  std::vector<std::string> ids;
  ids.reserve(runs_.size());
  for (const auto& r : runs_) ids.push_back(r.run_id);
  return ids;
}

std::vector<PredictionRun> RunSet::to_prediction_runs() const {
  const std::size_t classes = labels_.size();
  std::vector<PredictionRun> out;
  out.reserve(runs_.size());
  for (const auto& r : runs_) {
    PredictionRun run{r.run_id, r.family, r.representation, {}};
    run.predictions.reserve(truth_.size());
    for (std::size_t s = 0; s < truth_.size(); ++s) {
      auto conf = r.confidence(s, classes);
      run.predictions.push_back({truth_.entries()[s].sample_id, r.labels[s],
                                 std::vector<double>(conf.begin(), conf.end())});
    }
    out.push_back(std::move(run));
  }
  return out;
}

EnsembleSpec::EnsembleSpec(Mask mask, std::size_t run_count) : mask_(mask) {
  if (mask == 0) {
    throw Error(ErrorCode::kInvalidEnsemble, "ensemble selects no runs");
  }
  if (run_count > kMaxRuns) {
    throw Error(ErrorCode::kInvalidSize,
                "run count " + std::to_string(run_count) + " exceeds 64");
  }
  if (run_count < kMaxRuns && (mask >> run_count) != 0) {
    throw Error(ErrorCode::kInvalidEnsemble,
                "ensemble selects a run index >= " + std::to_string(run_count));
  }
}

EnsembleSpec EnsembleSpec::all(std::size_t run_count) {
  if (run_count == 0 || run_count > kMaxRuns) {
    throw Error(ErrorCode::kInvalidSize,
                "run count " + std::to_string(run_count) + " outside [1, 64]");
  }
  const Mask mask = run_count == kMaxRuns ? ~Mask{0} : (Mask{1} << run_count) - 1;
  return EnsembleSpec(mask, run_count);
}

EnsembleSpec EnsembleSpec::of(std::span<const std::size_t> indices,
                              std::size_t run_count) {
  Mask mask = 0;
  for (std::size_t i : indices) {
    if (i >= run_count || i >= kMaxRuns) {
      throw Error(ErrorCode::kInvalidEnsemble,
                  "run index " + std::to_string(i) + " out of range");
    }
    mask |= Mask{1} << i;
  }
  return EnsembleSpec(mask, run_count);
}

std::size_t EnsembleSpec::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

bool EnsembleSpec::contains(std::size_t index) const noexcept {
  return index < kMaxRuns && ((mask_ >> index) & 1U) != 0;
}

std::vector<std::size_t> EnsembleSpec::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string_view to_string(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kLowestLabelIndex: return "lowest-label";
    case TiePolicy::kPriorityOrder: return "priority";
    case TiePolicy::kHighestMeanConfidence: return "highest-confidence";
    case TiePolicy::kAbstain: return "abstain";
  }
  return "unknown";
}

std::optional<TiePolicy> parse_tie_policy(std::string_view text) {
  for (auto p : {TiePolicy::kLowestLabelIndex, TiePolicy::kPriorityOrder,
                 TiePolicy::kHighestMeanConfidence, TiePolicy::kAbstain}) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

RunSet align(std::span<const PredictionRun> runs, const GroundTruth& truth,
             const LabelSet& labels, AlignMode mode) {
  if (truth.empty()) {
    throw Error(ErrorCode::kEmptyInput, "ground truth has no samples");
  }
  if (runs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no prediction runs to align");
  }
  if (runs.size() > kMaxRuns) {
    throw Error(ErrorCode::kInvalidSize,
                std::to_string(runs.size()) + " runs exceed the limit of 64");
  }
  if (truth.class_count() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "ground truth class count differs from the label set");
  }

  std::vector<Diagnostic> problems;
  std::unordered_set<std::string_view> run_ids;
  for (const auto& run : runs) {
    if (!run_ids.insert(run.run_id).second) {
      problems.push_back(
          {ErrorCode::kDuplicateRunId, "run \"" + run.run_id + "\" repeated"});
    }
    auto found = check_run(run, labels.size());
    problems.insert(problems.end(), std::make_move_iterator(found.begin()),
                    std::make_move_iterator(found.end()));
  }
  raise_if_any(std::move(problems));

  // position[r][s] = index into runs[r].predictions for truth sample s.
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> position(
      runs.size(), std::vector<std::size_t>(truth.size(), kAbsent));
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::size_t extra = 0;
    for (std::size_t p = 0; p < runs[r].predictions.size(); ++p) {
      auto s = truth.index_of(runs[r].predictions[p].sample_id);
      if (s) {
        position[r][*s] = p;
      } else {
        ++extra;
      }
    }
    if (mode == AlignMode::kStrict) {
      const auto missing = static_cast<std::size_t>(
          std::count(position[r].begin(), position[r].end(), kAbsent));
      if (missing > 0) {
        problems.push_back({ErrorCode::kMissingSamples,
                            "run \"" + runs[r].run_id + "\" lacks " +
                                std::to_string(missing) + " truth sample(s)"});
      }
      if (extra > 0) {
        problems.push_back({ErrorCode::kExtraSamples,
                            "run \"" + runs[r].run_id + "\" has " +
                                std::to_string(extra) +
                                " sample(s) not in the truth"});
      }
    }
  }
  raise_if_any(std::move(problems));

  std::vector<std::size_t> kept;
  kept.reserve(truth.size());
  for (std::size_t s = 0; s < truth.size(); ++s) {
    bool everywhere = true;
    for (const auto& pos : position) everywhere = everywhere && pos[s] != kAbsent;
    if (everywhere) kept.push_back(s);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyIntersection,
                "no sample is covered by every run and the truth");
  }

  std::vector<TruthEntry> entries;
  entries.reserve(kept.size());
  for (std::size_t s : kept) entries.push_back(truth.entries()[s]);

  const std::size_t classes = labels.size();
  std::vector<AlignedRun> aligned;
  aligned.reserve(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& src = runs[r];
    AlignedRun out{src.run_id, src.family, src.representation, {}, {}};
    out.labels.reserve(kept.size());
    if (src.has_confidences()) out.confidences.reserve(kept.size() * classes);
    for (std::size_t s : kept) {
      const auto& p = src.predictions[position[r][s]];
      out.labels.push_back(p.label);
      out.confidences.insert(out.confidences.end(), p.confidence.begin(),
                             p.confidence.end());
    }
    aligned.push_back(std::move(out));
  }

  return RunSet(labels, GroundTruth(std::move(entries), classes),
                std::move(aligned), truth.size() - kept.size());
}

}  // namespace votesweep
