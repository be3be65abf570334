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

#include "votesweep/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "json.hpp"

namespace votesweep {
namespace {

using nlohmann::json;

constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

std::string_view strip_bom(std::string_view text) {
  if (text.substr(0, kUtf8Bom.size()) == kUtf8Bom) text.remove_prefix(kUtf8Bom.size());
  return text;
}

// Parses JSON, turning the library's byte offset into line:column.
json parse_json(std::string_view text, const std::string& what) {
  text = strip_bom(text);
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kParseError, what + ":" + std::to_string(line) + ":" +
                                            std::to_string(column) + ": " +
                                            e.what());
  }
}

const json* string_field(const json& obj, const char* key, const std::string& where,
                         std::vector<Diagnostic>& problems) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    problems.push_back({ErrorCode::kSchemaError,
                        where + ": \"" + key + "\" must be a string"});
    return nullptr;
  }
  return &*it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where, ErrorCode code,
                         std::vector<Diagnostic>& problems) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) {
      problems.push_back({code, where + ": unknown field \"" + item.key() + "\""});
    }
  }
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF.
// Returns rows with their 1-based line numbers; blank lines are skipped.
struct CsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    CsvRow row{line, {}};
    std::string field;
    bool quoted_field = false;
    bool end_of_row = false;
    while (!end_of_row) {
      if (i >= text.size()) {
        end_of_row = true;
        break;
      }
      const char c = text[i];
      if (c == '"' && field.empty() && !quoted_field) {
        quoted_field = true;
        ++i;
        while (true) {
          if (i >= text.size()) {
            throw Error(ErrorCode::kParseError,
                        "line " + std::to_string(row.line) + ": unterminated quote");
          }
          if (text[i] == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          field += text[i++];
        }
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
        ++i;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
        ++i;
        ++line;
        end_of_row = true;
      } else {
        if (quoted_field) {
          throw Error(ErrorCode::kParseError,
                      "line " + std::to_string(row.line) +
                          ": text after closing quote");
        }
        field += c;
        ++i;
      }
    }
    const bool blank = row.fields.empty() && field.empty() && !quoted_field;
    if (!blank) {
      row.fields.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Manifest parse_manifest(std::string_view text,
                        const std::filesystem::path& base_dir) {
  const json doc = parse_json(text, "manifest");
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "manifest must be a JSON object");
  }

  std::vector<Diagnostic> problems;
  reject_unknown_keys(doc, {"version", "labels", "truth", "runs"}, "manifest",
                      ErrorCode::kUnknownField, problems);

  Manifest m;
  m.base_dir = base_dir;
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer()) {
    problems.push_back({ErrorCode::kSchemaError,
                        "manifest: \"version\" must be an integer"});
  } else if (version->get<long long>() != kManifestVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "manifest version " + version->dump() + " (expected 1)");
  }

  auto labels = doc.find("labels");
  if (labels == doc.end() || !labels->is_array()) {
    problems.push_back({ErrorCode::kSchemaError,
                        "manifest: \"labels\" must be an array of strings"});
  } else {
    for (const auto& l : *labels) {
      if (!l.is_string()) {
        problems.push_back({ErrorCode::kSchemaError,
                            "manifest: label " + l.dump() + " is not a string"});
        continue;
      }
      m.labels.push_back(l.get<std::string>());
    }
  }

  if (const json* truth = string_field(doc, "truth", "manifest", problems)) {
    m.truth = truth->get<std::string>();
  }

  auto runs = doc.find("runs");
  if (runs == doc.end() || !runs->is_array() || runs->empty()) {
    problems.push_back({ErrorCode::kSchemaError,
                        "manifest: \"runs\" must be a non-empty array"});
  } else {
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < runs->size(); ++i) {
      const json& r = (*runs)[i];
      const std::string where = "manifest run #" + std::to_string(i);
      if (!r.is_object()) {
        problems.push_back({ErrorCode::kSchemaError, where + ": not an object"});
        continue;
      }
      reject_unknown_keys(r, {"id", "family", "representation", "file"}, where,
                          ErrorCode::kUnknownField, problems);
      ManifestRun entry;
      const json* id = string_field(r, "id", where, problems);
      const json* family = string_field(r, "family", where, problems);
      const json* rep = string_field(r, "representation", where, problems);
      const json* file = string_field(r, "file", where, problems);
      if (!id || !family || !rep || !file) continue;
      entry = {id->get<std::string>(), family->get<std::string>(),
               rep->get<std::string>(), file->get<std::string>()};
      if (!ids.insert(entry.id).second) {
        problems.push_back({ErrorCode::kDuplicateRunId,
                            where + ": run id \"" + entry.id + "\" repeated"});
      }
      if (!is_family_tag(entry.family)) {
        problems.push_back({ErrorCode::kSchemaError,
                            where + ": unknown family tag \"" + entry.family + "\""});
      }
      if (!is_representation_tag(entry.representation)) {
        problems.push_back({ErrorCode::kSchemaError,
                            where + ": unknown representation tag \"" +
                                entry.representation + "\""});
      }
      m.runs.push_back(std::move(entry));
    }
    if (runs->size() > kMaxRuns) {
      problems.push_back({ErrorCode::kInvalidSize,
                          "manifest lists " + std::to_string(runs->size()) +
                              " runs; at most 64 are supported"});
    }
  }
  raise_if_any(std::move(problems));
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

GroundTruth parse_truth(std::string_view text, const LabelSet& labels) {
  const auto rows = parse_csv(strip_bom(text));
  if (rows.empty()) {
    throw Error(ErrorCode::kEmptyFile, "truth file is empty");
  }
  const auto& header = rows.front().fields;
  if (header.size() != 2 || header[0] != "sample_id" || header[1] != "label") {
    throw Error(ErrorCode::kParseError,
                "truth line " + std::to_string(rows.front().line) +
                    ": header must be sample_id,label");
  }
  if (rows.size() == 1) {
    throw Error(ErrorCode::kEmptyFile, "truth file has a header but no rows");
  }

  std::vector<Diagnostic> problems;
  std::vector<TruthEntry> entries;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "truth line " + std::to_string(row.line);
    if (row.fields.size() != 2) {
      problems.push_back({ErrorCode::kParseError,
                          where + ": expected 2 fields, found " +
                              std::to_string(row.fields.size())});
      continue;
    }
    const std::string& id = row.fields[0];
    const std::string& name = row.fields[1];
    if (id.empty()) {
      problems.push_back({ErrorCode::kSchemaError, where + ": empty sample_id"});
      continue;
    }
    if (!seen.insert(id).second) {
      problems.push_back({ErrorCode::kDuplicateSampleId,
                          where + ": sample_id \"" + id + "\" repeated"});
      continue;
    }
    auto label = labels.find(name);
    if (!label) {
      problems.push_back({ErrorCode::kUnknownLabel,
                          where + ": label \"" + name + "\" not in label set"});
      continue;
    }
    entries.push_back({id, *label});
  }
  raise_if_any(std::move(problems));
  return GroundTruth(std::move(entries), labels.size());
}

GroundTruth load_truth(const std::filesystem::path& path, const LabelSet& labels) {
  return parse_truth(read_file(path), labels);
}

PredictionRun parse_run(std::string_view text, const ManifestRun& entry,
                        const LabelSet& labels) {
  const std::string where = "run \"" + entry.id + "\"";
  const json doc = parse_json(text, where);
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, where + ": file must be a JSON object");
  }

  std::vector<Diagnostic> problems;
  reject_unknown_keys(doc, {"run_id", "predictions", "metadata"}, where,
                      ErrorCode::kSchemaError, problems);
  if (const json* id = string_field(doc, "run_id", where, problems)) {
    if (id->get<std::string>() != entry.id) {
      problems.push_back({ErrorCode::kSchemaError,
                          where + ": file declares run_id \"" +
                              id->get<std::string>() + "\""});
    }
  }
  if (auto meta = doc.find("metadata"); meta != doc.end() && !meta->is_object()) {
    problems.push_back({ErrorCode::kSchemaError, where + ": metadata must be an object"});
  }

  PredictionRun run{entry.id, entry.family, entry.representation, {}};
  auto preds = doc.find("predictions");
  if (preds == doc.end() || !preds->is_array()) {
    problems.push_back({ErrorCode::kSchemaError,
                        where + ": \"predictions\" must be an array"});
    raise_if_any(std::move(problems));
  }

  bool schema_ok = true;
  run.predictions.reserve(preds->size());
  for (std::size_t i = 0; i < preds->size(); ++i) {
    const json& p = (*preds)[i];
    const std::string at = where + ", prediction #" + std::to_string(i);
    if (!p.is_object()) {
      problems.push_back({ErrorCode::kSchemaError, at + ": not an object"});
      schema_ok = false;
      continue;
    }
    reject_unknown_keys(p, {"sample_id", "label", "confidence"}, at,
                        ErrorCode::kSchemaError, problems);
    const json* sid = string_field(p, "sample_id", at, problems);
    const json* lab = string_field(p, "label", at, problems);
    if (!sid || !lab) {
      schema_ok = false;
      continue;
    }
    Prediction out;
    out.sample_id = sid->get<std::string>();
    auto label = labels.find(lab->get<std::string>());
    if (!label) {
      problems.push_back({ErrorCode::kUnknownLabel,
                          where + ", sample \"" + out.sample_id + "\": label \"" +
                              lab->get<std::string>() + "\" not in label set"});
      schema_ok = false;
      continue;
    }
    out.label = *label;
    if (auto conf = p.find("confidence"); conf != p.end()) {
      bool numeric = conf->is_array() && !conf->empty();
      if (numeric) {
        for (const auto& c : *conf) numeric = numeric && c.is_number();
      }
      if (!numeric) {
        problems.push_back({ErrorCode::kSchemaError,
                            where + ", sample \"" + out.sample_id +
                                "\": confidence must be a non-empty number array"});
        schema_ok = false;
        continue;
      }
      out.confidence.reserve(conf->size());
      for (const auto& c : *conf) out.confidence.push_back(c.get<double>());
    }
    run.predictions.push_back(std::move(out));
  }

  // Semantic checks only make sense once every row parsed.
  if (schema_ok) {
    auto semantic = check_run(run, labels.size());
    problems.insert(problems.end(), std::make_move_iterator(semantic.begin()),
                    std::make_move_iterator(semantic.end()));
  }
  raise_if_any(std::move(problems));
  return run;
}

PredictionRun load_run(const std::filesystem::path& path, const ManifestRun& entry,
                       const LabelSet& labels) {
  return parse_run(read_file(path), entry, labels);
}

namespace {

template <typename T>
struct Loaded {
  std::optional<T> value;
  std::vector<Diagnostic> problems;
};

template <typename Fn>
auto capture(Fn&& fn) -> Loaded<decltype(fn())> {
  Loaded<decltype(fn())> out;
  try {
    out.value.emplace(fn());
  } catch (const ValidationError& e) {
    out.problems = e.diagnostics();
  } catch (const Error& e) {
    out.problems.push_back({e.code(), e.what()});
  }
  return out;
}

}  // namespace

Workspace load_workspace(const std::filesystem::path& manifest_path,
                         AlignMode mode) {
  Manifest manifest = load_manifest(manifest_path);
  const LabelSet labels(manifest.labels);

  auto truth_job = std::async(std::launch::async, [&] {
    return capture([&] { return load_truth(manifest.resolve(manifest.truth), labels); });
  });
  std::vector<std::future<Loaded<PredictionRun>>> run_jobs;
  run_jobs.reserve(manifest.runs.size());
  for (const auto& entry : manifest.runs) {
    run_jobs.push_back(std::async(std::launch::async, [&manifest, &labels, &entry] {
      return capture(
          [&] { return load_run(manifest.resolve(entry.file), entry, labels); });
    }));
  }

  // Collected in manifest order regardless of completion order.
  std::vector<Diagnostic> problems;
  auto truth = truth_job.get();
  problems.insert(problems.end(), truth.problems.begin(), truth.problems.end());
  std::vector<PredictionRun> runs;
  runs.reserve(manifest.runs.size());
  for (auto& job : run_jobs) {
    auto loaded = job.get();
    problems.insert(problems.end(), loaded.problems.begin(), loaded.problems.end());
    if (loaded.value) runs.push_back(std::move(*loaded.value));
  }
  raise_if_any(std::move(problems));

  RunSet aligned = align(runs, *truth.value, labels, mode);
  return Workspace{std::move(manifest), std::move(aligned)};
}

}  // namespace votesweep
