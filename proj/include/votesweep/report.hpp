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

// Byte-stable serialization of evaluation results.
//
// Three output formats exist:
//   kStructured  JSON with a fixed key order and two-space indentation
//   kDelimited   CSV with a header row and LF line endings
//   kPlot        two-column CSV (label,accuracy), one row per chart bar
//
// Accuracies are printed with exactly four decimals, rounded half to even
// from the exact correct/total ratio. Ensembles are printed as their run ids
// in lexicographic order. Nothing time- or host-dependent is written unless
// the metadata carries it explicitly.

#ifndef VOTESWEEP_REPORT_HPP_
#define VOTESWEEP_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "votesweep/grouping.hpp"
#include "votesweep/ingest.hpp"
#include "votesweep/metrics.hpp"
#include "votesweep/model.hpp"
#include "votesweep/sweep.hpp"

namespace votesweep {

// Four decimals, half to even, computed exactly from the count pair.
std::string format_score(const Score& score);
// Four decimals, half to even, for values that only exist as doubles.
std::string format_fixed4(double value);

// Sorted run ids of the ensemble's members.
std::vector<std::string> member_ids(const EnsembleSpec& ensemble,
                                    std::span<const std::string> run_ids);
// member_ids joined with '+'.
std::string ensemble_label(const EnsembleSpec& ensemble,
                           std::span<const std::string> run_ids);

struct ReportMetadata {
  std::string manifest;
  TiePolicy policy = TiePolicy::kLowestLabelIndex;
  AlignMode alignment = AlignMode::kStrict;
  std::size_t samples = 0;
  std::size_t dropped_samples = 0;
  std::vector<std::string> labels;
  // Run ids in RunSet index order; used to render masks.
  std::vector<std::string> run_ids;
  std::optional<std::string> timestamp;
  std::optional<std::string> hostname;
};

ReportMetadata describe(const RunSet& runs, std::string manifest,
                        TiePolicy policy, AlignMode alignment);

struct IndividualTable {
  std::vector<IndividualRow> rows;
  // Optional closing "ensemble" row.
  std::optional<RankedEnsemble> ensemble;
};

struct FuseReport {
  EnsembleSpec ensemble;
  MetricsBundle metrics;
};

enum class ReportKind { kIndividualTable, kSweep, kBestPerSize, kGroups, kFuse };

std::string_view to_string(ReportKind kind);

using ReportPayload =
    std::variant<IndividualTable, SweepReport, SweepAll, GroupReport, FuseReport>;

struct ReportDocument {
  ReportMetadata metadata;
  ReportPayload payload;

  ReportKind kind() const noexcept;
};

enum class Format { kStructured, kDelimited, kPlot };

std::string_view to_string(Format format);
std::optional<Format> parse_format(std::string_view text);

// Throws UnsupportedKindFormat for kPlot on individual tables and fuse
// results, which have no bar-chart shape.
std::string emit(const ReportDocument& doc, Format format);

std::string emit_plot_data(const SweepReport& report,
                           std::span<const std::string> run_ids);
std::string emit_plot_data(const BestPerSize& best);
std::string emit_plot_data(const GroupReport& report);

// Run and manifest writers; parse_run/parse_manifest read them back.
std::string serialize_run(const PredictionRun& run, const LabelSet& labels);
std::string serialize_manifest(const Manifest& manifest);
std::string serialize_truth(const GroundTruth& truth, const LabelSet& labels);

}  // namespace votesweep

#endif  // VOTESWEEP_REPORT_HPP_
