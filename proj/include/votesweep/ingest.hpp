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

// Readers for the three input files.
//
//   manifest  {"version":1,"labels":[...],"truth":"truth.csv",
//              "runs":[{"id":..,"family":..,"representation":..,"file":..}]}
//   truth     CSV with header `sample_id,label`
//   run file  {"run_id":..,"predictions":[{"sample_id":..,"label":..,
//              "confidence":[..]}], "metadata":{..}}
//
// All files are UTF-8. Labels are matched by exact string. Paths inside the
// manifest are relative to the manifest's directory.

#ifndef VOTESWEEP_INGEST_HPP_
#define VOTESWEEP_INGEST_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "votesweep/model.hpp"

namespace votesweep {

inline constexpr int kManifestVersion = 1;

struct ManifestRun {
  std::string id;
  std::string family;
  std::string representation;
  std::string file;

  bool operator==(const ManifestRun&) const = default;
};

struct Manifest {
  int version = kManifestVersion;
  std::vector<std::string> labels;
  std::string truth;
  std::vector<ManifestRun> runs;
  // Directory the relative paths are resolved against.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& relative) const {
    return base_dir / relative;
  }
};

Manifest parse_manifest(std::string_view text,
                        const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

GroundTruth parse_truth(std::string_view text, const LabelSet& labels);
GroundTruth load_truth(const std::filesystem::path& path, const LabelSet& labels);

PredictionRun parse_run(std::string_view text, const ManifestRun& entry,
                        const LabelSet& labels);
PredictionRun load_run(const std::filesystem::path& path,
                       const ManifestRun& entry, const LabelSet& labels);

struct Workspace {
  Manifest manifest;
  RunSet runs;
};

// Loads the manifest, truth and every run file, then aligns. Problems in the
// truth and run files are gathered across all files and reported together.
Workspace load_workspace(const std::filesystem::path& manifest_path,
                         AlignMode mode = AlignMode::kStrict);

std::string read_file(const std::filesystem::path& path);

}  // namespace votesweep

#endif  // VOTESWEEP_INGEST_HPP_
