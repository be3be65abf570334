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

// Domain types shared by ingest, voting, metrics, sweep and reporting.
//
// A RunSet is the aligned, immutable view every evaluation works on: each run
// holds one label per ground-truth sample, in ground-truth file order, and run
// index i corresponds to bit i of an EnsembleSpec mask.

#ifndef VOTESWEEP_MODEL_HPP_
#define VOTESWEEP_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "votesweep/error.hpp"

namespace votesweep {

using Label = std::int32_t;

// Fused prediction withheld on a tie under TiePolicy::kAbstain.
inline constexpr Label kAbstain = -1;

// Tolerance on the sum of a confidence vector.
inline constexpr double kConfidenceSumTolerance = 1e-6;

// Largest number of runs an EnsembleSpec can address.
inline constexpr std::size_t kMaxRuns = 64;

class LabelSet {
 public:
  explicit LabelSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Label label) const;

  // Exact string match; no case folding or Unicode normalization.
  std::optional<Label> find(std::string_view name) const;

  bool operator==(const LabelSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Label> index_;
};

struct TruthEntry {
  std::string sample_id;
  Label label = 0;

  bool operator==(const TruthEntry&) const = default;
};

// Ordered evaluation samples. The entry order is the canonical sample order
// for every aligned run and every report.
class GroundTruth {
 public:
  GroundTruth(std::vector<TruthEntry> entries, std::size_t class_count);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t class_count() const noexcept { return class_count_; }
  const std::vector<TruthEntry>& entries() const noexcept { return entries_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view sample_id) const;

  bool operator==(const GroundTruth& other) const {
    return class_count_ == other.class_count_ && entries_ == other.entries_;
  }

 private:
  std::vector<TruthEntry> entries_;
  std::vector<Label> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t class_count_;
};

struct Prediction {
  std::string sample_id;
  Label label = 0;
  // Empty when the run carries no confidences.
  std::vector<double> confidence;

  bool operator==(const Prediction&) const = default;
};

// One model's predictions as read from disk, before alignment.
struct PredictionRun {
  std::string run_id;
  std::string family;
  std::string representation;
  std::vector<Prediction> predictions;

  bool has_confidences() const noexcept;
  bool operator==(const PredictionRun&) const = default;
};

inline constexpr std::string_view kFamilyTags[] = {"camelbert", "arabert",
                                                   "asafayabert", "other"};
inline constexpr std::string_view kRepresentationTags[] = {
    "post", "refined", "ner", "summarized", "other"};

bool is_family_tag(std::string_view tag);
bool is_representation_tag(std::string_view tag);

// Checks every PredictionRun invariant that does not depend on ground truth:
// tags, label range, unique sample ids, confidence shape, sum and argmax.
std::vector<Diagnostic> check_run(const PredictionRun& run,
                                  std::size_t class_count);

// A run after alignment: labels[s] is the prediction for truth sample s.
struct AlignedRun {
  std::string run_id;
  std::string family;
  std::string representation;
  std::vector<Label> labels;
  // Row-major sample x class; empty when the run has no confidences.
  std::vector<double> confidences;

  bool has_confidences() const noexcept { return !confidences.empty(); }
  std::span<const double> confidence(std::size_t sample,
                                     std::size_t class_count) const;

  bool operator==(const AlignedRun&) const = default;
};

enum class AlignMode { kStrict, kIntersect };

std::string_view to_string(AlignMode mode);
std::optional<AlignMode> parse_align_mode(std::string_view text);

class RunSet {
 public:
  RunSet(LabelSet labels, GroundTruth truth, std::vector<AlignedRun> runs,
         std::size_t dropped_samples);

  const LabelSet& labels() const noexcept { return labels_; }
  const GroundTruth& truth() const noexcept { return truth_; }
  const std::vector<AlignedRun>& runs() const noexcept { return runs_; }
  const AlignedRun& run(std::size_t index) const { return runs_.at(index); }
  std::size_t size() const noexcept { return runs_.size(); }
  std::size_t sample_count() const noexcept { return truth_.size(); }
  std::size_t class_count() const noexcept { return labels_.size(); }
  // Samples removed by intersect alignment; always 0 in strict mode.
  std::size_t dropped_samples() const noexcept { return dropped_; }

  std::optional<std::size_t> find(std::string_view run_id) const;
  std::vector<std::string> run_ids() const;

  // Inverse of align(): predictions listed in truth order.
  std::vector<PredictionRun> to_prediction_runs() const;

  bool operator==(const RunSet& other) const {
    return labels_ == other.labels_ && truth_ == other.truth_ &&
           runs_ == other.runs_ && dropped_ == other.dropped_;
  }

 private:
  LabelSet labels_;
  GroundTruth truth_;
  std::vector<AlignedRun> runs_;
  std::size_t dropped_;
};

// Subset of RunSet indices; bit i selects run i.
class EnsembleSpec {
 public:
  using Mask = std::uint64_t;

  EnsembleSpec(Mask mask, std::size_t run_count);

  static EnsembleSpec all(std::size_t run_count);
  static EnsembleSpec of(std::span<const std::size_t> indices,
                         std::size_t run_count);

  Mask mask() const noexcept { return mask_; }
  std::size_t size() const noexcept;
  bool contains(std::size_t index) const noexcept;
  // Ascending run indices.
  std::vector<std::size_t> members() const;

  auto operator<=>(const EnsembleSpec&) const = default;

 private:
  Mask mask_;
};

enum class TiePolicy {
  kLowestLabelIndex,
  // Tied class predicted by the earliest-indexed member wins.
  kPriorityOrder,
  // Tied class with the greatest mean confidence; needs confidences.
  kHighestMeanConfidence,
  kAbstain,
};

std::string_view to_string(TiePolicy policy);
std::optional<TiePolicy> parse_tie_policy(std::string_view text);

// Aligns runs onto the ground-truth sample order.
//
// Strict mode requires every run to cover exactly the truth sample set.
// Intersect mode restricts truth and all runs to the samples every run
// covers and records how many truth samples were dropped. All violations
// across all runs are reported together in one ValidationError.
RunSet align(std::span<const PredictionRun> runs, const GroundTruth& truth,
             const LabelSet& labels, AlignMode mode = AlignMode::kStrict);

}  // namespace votesweep

#endif  // VOTESWEEP_MODEL_HPP_
