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

#ifndef VOTESWEEP_CLI_HPP_
#define VOTESWEEP_CLI_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "votesweep/grouping.hpp"
#include "votesweep/model.hpp"
#include "votesweep/report.hpp"
#include "votesweep/sweep.hpp"

namespace votesweep::cli {

enum class Command { kValidate, kTable, kFuse, kSweep, kSweepAll, kGroups, kReplicate };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
  Command command = Command::kValidate;
  std::filesystem::path manifest;
  TiePolicy policy = TiePolicy::kLowestLabelIndex;
  AlignMode alignment = AlignMode::kStrict;
  std::size_t size = 0;
  std::optional<SizeRange> sizes;
  std::size_t top_n = 10;
  std::optional<GroupKey> key;
  // Run ids for `fuse`; empty selects all runs.
  std::vector<std::string> runs;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> out_dir;
  Format format = Format::kStructured;
  unsigned threads = 0;
  // Adds timestamp and hostname to structured reports.
  bool stamp = false;
};

struct CliOutcome {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

CliOutcome run(const CliConfig& config);

// Parses argv-style arguments (without the program name) and runs them.
CliOutcome run_cli(const std::vector<std::string>& args);

// Writes to a sibling temporary file, then renames it over `path`.
void write_atomically(const std::filesystem::path& path, std::string_view bytes);

// "3", "2..12" or "2-12".
std::optional<SizeRange> parse_size_range(std::string_view text);

}  // namespace votesweep::cli

#endif  // VOTESWEEP_CLI_HPP_
