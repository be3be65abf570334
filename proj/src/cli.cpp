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

#include "votesweep/cli.hpp"

#include <unistd.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "votesweep/ingest.hpp"
#include "votesweep/voting.hpp"

namespace votesweep::cli {
namespace {

// Error raised for flag problems detected after the inputs are loaded.
struct UsageError {
  std::string message;
};

std::string diagnostics_text(const Error& e) {
  std::string text;
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    text = std::to_string(v->diagnostics().size()) + " validation error(s):\n";
    for (const auto& d : v->diagnostics()) {
      text += "  ";
      text += to_string(d.code);
      text += ": ";
      text += d.message;
      text += '\n';
    }
  } else {
    text = std::string("error: ") + e.what() + "\n";
  }
  return text;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

EnsembleSpec select_runs(const RunSet& runs, const std::vector<std::string>& ids) {
  if (ids.empty() || (ids.size() == 1 && ids.front() == "all")) {
    return EnsembleSpec::all(runs.size());
  }
  EnsembleSpec::Mask mask = 0;
  for (const auto& id : ids) {
    auto index = runs.find(id);
    if (!index) throw UsageError{"unknown run id \"" + id + "\""};
    mask |= EnsembleSpec::Mask{1} << *index;
  }
  return EnsembleSpec(mask, runs.size());
}

std::string two_digits(std::size_t k) {
  return (k < 10 ? "0" : "") + std::to_string(k);
}

struct Emitter {
  const CliConfig& config;
  ReportMetadata metadata;

  std::string render(ReportPayload payload, Format format) const {
    return emit(ReportDocument{metadata, std::move(payload)}, format);
  }
};

// Writes the full artifact set: individual table (+ best ensemble row),
// per-size top-N plot data for k = 2..n, best-per-size plot data and one
// plot file per grouping key.
std::string replicate(const RunSet& runs, const CliConfig& config,
                      const Emitter& emitter) {
  namespace fs = std::filesystem;
  const fs::path dir = *config.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  const SweepOptions options{config.policy, config.top_n, config.threads};
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& bytes) {
    write_atomically(dir / name, bytes);
    written.push_back(name);
  };

  IndividualTable table{individual_table(runs), std::nullopt};
  std::optional<SweepAll> sweeps;
  if (runs.size() >= 2) {
    sweeps = sweep_all(runs, {2, runs.size()}, options);
    table.ensemble = *std::min_element(sweeps->best.best.begin(),
                                       sweeps->best.best.end(), ranks_before);
  }
  put("table.csv", emitter.render(table, Format::kDelimited));
  if (sweeps) {
    for (const auto& report : sweeps->per_size) {
      put("top_k" + two_digits(report.size) + ".csv",
          emit_plot_data(report, emitter.metadata.run_ids));
    }
    put("best_per_size.csv", emit_plot_data(sweeps->best));
  }
  for (GroupKey key : {GroupKey::kRepresentation, GroupKey::kFamily}) {
    put("groups_" + std::string(to_string(key)) + ".csv",
        emit_plot_data(evaluate_groups(runs, key, config.policy)));
  }

  std::string summary = "wrote " + std::to_string(written.size()) + " files to " +
                        dir.string() + "\n";
  for (const auto& name : written) summary += "  " + name + "\n";
  return summary;
}

std::string execute(const RunSet& runs, const CliConfig& config) {
  const std::size_t n = runs.size();
  Emitter emitter{config, describe(runs, config.manifest.string(), config.policy,
                                   config.alignment)};
  if (config.stamp) {
    emitter.metadata.timestamp = utc_timestamp();
    emitter.metadata.hostname = host_name();
  }
  const SweepOptions options{config.policy, config.top_n, config.threads};

  switch (config.command) {
    case Command::kValidate: {
      std::string text = std::to_string(n) + " runs, " +
                         std::to_string(runs.sample_count()) + " samples, " +
                         std::to_string(runs.class_count()) + " labels";
      if (runs.dropped_samples() > 0) {
        text += " (" + std::to_string(runs.dropped_samples()) +
                " samples dropped by intersect alignment)";
      }
      return text + "\n";
    }
    case Command::kTable:
      return emitter.render(IndividualTable{individual_table(runs), std::nullopt},
                            config.format);
    case Command::kFuse: {
      const EnsembleSpec ensemble = select_runs(runs, config.runs);
      MetricsBundle metrics = evaluate(fuse(ensemble, runs, config.policy), runs.truth());
      return emitter.render(FuseReport{ensemble, std::move(metrics)}, config.format);
    }
    case Command::kSweep:
      if (config.size < 1 || config.size > n) {
        throw UsageError{"--size must be within 1.." + std::to_string(n)};
      }
      return emitter.render(sweep_size(runs, config.size, options), config.format);
    case Command::kSweepAll: {
      const SizeRange sizes = config.sizes.value_or(SizeRange{1, n});
      if (sizes.first < 1 || sizes.last > n || sizes.first > sizes.last) {
        throw UsageError{"--sizes must lie within 1.." + std::to_string(n)};
      }
      return emitter.render(sweep_all(runs, sizes, options), config.format);
    }
    case Command::kGroups:
      return emitter.render(evaluate_groups(runs, *config.key, config.policy),
                            config.format);
    case Command::kReplicate:
      return replicate(runs, config, emitter);
  }
  return {};
}

}  // namespace

std::optional<SizeRange> parse_size_range(std::string_view text) {
  auto number = [](std::string_view s) -> std::optional<std::size_t> {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
  };
  std::size_t sep_len = 2;
  auto sep = text.find("..");
  if (sep == std::string_view::npos) {
    sep = text.find('-');
    sep_len = 1;
  }
  if (sep == std::string_view::npos) {
    auto v = number(text);
    if (!v) return std::nullopt;
    return SizeRange{*v, *v};
  }
  auto a = number(text.substr(0, sep));
  auto b = number(text.substr(sep + sep_len));
  if (!a || !b || *a > *b) return std::nullopt;
  return SizeRange{*a, *b};
}

void write_atomically(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot replace " + path.string());
  }
}

CliOutcome run(const CliConfig& config) {
  CliOutcome outcome;
  std::optional<Workspace> workspace;
  try {
    workspace.emplace(load_workspace(config.manifest, config.alignment));
  } catch (const Error& e) {
    outcome.exit_code = kExitInvalidInput;
    outcome.err = diagnostics_text(e);
    return outcome;
  }

  try {
    std::string bytes = execute(workspace->runs, config);
    if (config.out && config.command != Command::kReplicate) {
      write_atomically(*config.out, bytes);
    } else {
      outcome.out = std::move(bytes);
    }
  } catch (const UsageError& e) {
    outcome.exit_code = kExitUsage;
    outcome.err = "usage error: " + e.message + "\n";
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::kUnsupportedKindFormat ||
                       e.code() == ErrorCode::kInvalidSize ||
                       e.code() == ErrorCode::kInvalidArgument;
    outcome.exit_code = usage ? kExitUsage : kExitInvalidInput;
    outcome.err = diagnostics_text(e);
  }
  return outcome;
}

CliOutcome run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Majority-voting ensemble evaluation over prediction runs",
               "votesweep"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  std::string policy = "lowest-label";
  std::string alignment = "strict";
  std::string format = "json";
  std::string out;
  app.add_option("-m,--manifest", config.manifest, "Manifest file")->required();
  app.add_option("--tie-policy", policy, "Tie rule for even vote splits")
      ->check(CLI::IsMember({"lowest-label", "priority", "highest-confidence", "abstain"}));
  app.add_option("--align", alignment, "Sample alignment mode")
      ->check(CLI::IsMember({"strict", "intersect"}));
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "plot"}));
  app.add_option("-o,--out", out, "Write the report here instead of stdout");
  app.add_option("--threads", config.threads, "Sweep worker threads (0 = auto)");
  app.add_flag("--stamp", config.stamp, "Record timestamp and hostname");

  auto* validate = app.add_subcommand("validate", "Check inputs and print a summary");
  auto* table = app.add_subcommand("table", "Accuracy of every individual run");
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse one ensemble and score it");
  std::vector<std::string> runs_flag{"all"};
  fuse_cmd->add_option("--runs", runs_flag, "Run ids (space- or comma-separated), or all")
      ->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Rank every ensemble of one size");
  sweep->add_option("--size", config.size, "Ensemble size k")->required();
  sweep->add_option("--top", config.top_n, "Rows to keep")->check(CLI::PositiveNumber);

  auto* sweep_all_cmd = app.add_subcommand("sweep-all", "Sweep a range of sizes");
  std::string sizes;
  sweep_all_cmd->add_option("--sizes", sizes, "Size range such as 2..12");
  sweep_all_cmd->add_option("--top", config.top_n, "Rows to keep per size")
      ->check(CLI::PositiveNumber);

  auto* groups = app.add_subcommand("groups", "Fuse all runs sharing a tag");
  std::string key;
  groups->add_option("--key", key, "representation or family")
      ->required()
      ->check(CLI::IsMember({"representation", "family"}));

  auto* replicate_cmd =
      app.add_subcommand("replicate", "Write table, per-size, best-per-size and group files");
  std::string out_dir;
  replicate_cmd->add_option("--out-dir", out_dir, "Destination directory")->required();
  replicate_cmd->add_option("--top", config.top_n, "Rows per size")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"votesweep"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  CliOutcome outcome;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream err;
    const int code = app.exit(e, o, err);
    outcome.out = o.str();
    outcome.err = err.str();
    outcome.exit_code = code == 0 ? kExitOk : kExitUsage;
    return outcome;
  }

  config.policy = *parse_tie_policy(policy);
  config.alignment = *parse_align_mode(alignment);
  config.format = *parse_format(format);
  if (!out.empty()) config.out = out;

  if (validate->parsed()) {
    config.command = Command::kValidate;
  } else if (table->parsed()) {
    config.command = Command::kTable;
  } else if (fuse_cmd->parsed()) {
    config.command = Command::kFuse;
    for (const auto& id : runs_flag) {
      if (!id.empty()) config.runs.push_back(id);
    }
    if (config.runs.empty()) {
      return {kExitUsage, "", "usage error: --runs selects nothing\n"};
    }
  } else if (sweep->parsed()) {
    config.command = Command::kSweep;
  } else if (sweep_all_cmd->parsed()) {
    config.command = Command::kSweepAll;
    if (!sizes.empty()) {
      config.sizes = parse_size_range(sizes);
      if (!config.sizes) {
        return {kExitUsage, "", "usage error: bad --sizes \"" + sizes + "\"\n"};
      }
    }
  } else if (groups->parsed()) {
    config.command = Command::kGroups;
    config.key = parse_group_key(key);
  } else {
    config.command = Command::kReplicate;
    config.out_dir = out_dir;
  }
  return run(config);
}

}  // namespace votesweep::cli
