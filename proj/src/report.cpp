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

#include "votesweep/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "json.hpp"

namespace votesweep {
namespace {

using nlohmann::json;

std::string quote_json(std::string_view text) {
  return json(std::string(text)).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string fixed4_from_scaled(std::uint64_t scaled, bool negative) {
  std::string frac = std::to_string(scaled % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(scaled / 10000) + "." + frac;
}

// Pretty printer with a fixed layout: one member per line, two-space indent,
// optionally inline arrays for short scalar lists.
class JsonWriter {
 public:
  JsonWriter& open_object() {
    prefix();
    out_ += '{';
    stack_.push_back({false});
    return *this;
  }
  JsonWriter& open_array(bool inline_items = false) {
    prefix();
    out_ += '[';
    stack_.push_back({inline_items});
    return *this;
  }
  JsonWriter& close_object() { return close('}'); }
  JsonWriter& close_array() { return close(']'); }

  JsonWriter& key(std::string_view name) {
    item();
    out_ += quote_json(name);
    out_ += ": ";
    after_key_ = true;
    return *this;
  }
  JsonWriter& raw(std::string_view token) {
    prefix();
    out_ += token;
    return *this;
  }
  JsonWriter& string(std::string_view text) { return raw(quote_json(text)); }
  JsonWriter& number(std::uint64_t n) { return raw(std::to_string(n)); }
  JsonWriter& strings(std::span<const std::string> items) {
    open_array(true);
    for (const auto& s : items) string(s);
    return close_array();
  }

  std::string finish() && {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  struct Frame {
    bool inline_items;
    bool empty = true;
  };

  void prefix() {
    if (after_key_) {
      after_key_ = false;
    } else {
      item();
    }
  }

  void item() {
    if (stack_.empty()) return;
    Frame& f = stack_.back();
    if (!f.empty) out_ += ',';
    if (f.inline_items) {
      if (!f.empty) out_ += ' ';
    } else {
      newline(stack_.size());
    }
    f.empty = false;
  }

  JsonWriter& close(char bracket) {
    const Frame f = stack_.back();
    stack_.pop_back();
    if (!f.empty && !f.inline_items) newline(stack_.size());
    out_ += bracket;
    return *this;
  }

  void newline(std::size_t depth) {
    out_ += '\n';
    out_.append(depth * 2, ' ');
  }

  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  template <typename... Fields>
  CsvWriter& row(const Fields&... fields) {
    bool first = true;
    ((out_ += (first ? "" : ","), out_ += csv_field(fields), first = false), ...);
    out_ += '\n';
    return *this;
  }
  std::string finish() && { return std::move(out_); }

 private:
  std::string out_;
};

void write_score(JsonWriter& w, const Score& s) {
  w.key("accuracy").raw(format_score(s));
  w.key("correct").number(s.correct);
  w.key("total").number(s.total);
}

void write_ranked(JsonWriter& w, const RankedEnsemble& r,
                  std::span<const std::string> run_ids) {
  const auto ids = member_ids(r.ensemble, run_ids);
  w.key("ensemble").strings(ids);
  w.key("size").number(r.ensemble.size());
  write_score(w, r.score);
  w.key("ties").number(r.ties);
  w.key("abstentions").number(r.abstentions);
}

void write_metrics(JsonWriter& w, const MetricsBundle& m,
                   std::span<const std::string> labels) {
  write_score(w, m.accuracy);
  w.key("ties").number(m.ties);
  w.key("abstentions").number(m.abstentions);
  w.key("per_class").open_array();
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    const auto& pc = m.per_class[c];
    w.open_object();
    w.key("label").string(labels[c]);
    w.key("precision").raw(format_fixed4(pc.precision));
    w.key("recall").raw(format_fixed4(pc.recall));
    w.key("f1").raw(format_fixed4(pc.f1));
    w.key("support").number(pc.support);
    w.close_object();
  }
  w.close_array();

  const auto& cm = m.confusion;
  std::vector<std::string> columns(labels.begin(), labels.end());
  if (cm.has_abstain_column()) columns.emplace_back("(abstain)");
  w.key("confusion").open_object();
  w.key("columns").strings(columns);
  w.key("rows").open_array();
  for (std::size_t t = 0; t < cm.classes(); ++t) {
    w.open_array(true);
    for (std::size_t p = 0; p < cm.columns(); ++p) w.number(cm.at(t, p));
    w.close_array();
  }
  w.close_array();
  w.close_object();
}

void write_sweep(JsonWriter& w, const SweepReport& r,
                 std::span<const std::string> run_ids) {
  w.open_object();
  w.key("size").number(r.size);
  w.key("total_combinations").number(r.total_combinations);
  w.key("top_n").number(r.top_n);
  w.key("ranked").open_array();
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    w.open_object();
    w.key("rank").number(i + 1);
    write_ranked(w, r.ranked[i], run_ids);
    w.close_object();
  }
  w.close_array();
  w.close_object();
}

void write_result(JsonWriter& w, const ReportDocument& doc) {
  const auto& meta = doc.metadata;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IndividualTable>) {
          w.open_object();
          w.key("rows").open_array();
          for (const auto& row : p.rows) {
            w.open_object();
            w.key("model").string(row.run_id);
            w.key("family").string(row.family);
            w.key("representation").string(row.representation);
            write_score(w, row.score);
            w.close_object();
          }
          w.close_array();
          if (p.ensemble) {
            w.key("ensemble").open_object();
            write_ranked(w, *p.ensemble, meta.run_ids);
            w.close_object();
          }
          w.close_object();
        } else if constexpr (std::is_same_v<T, SweepReport>) {
          write_sweep(w, p, meta.run_ids);
        } else if constexpr (std::is_same_v<T, SweepAll>) {
          w.open_object();
          w.key("total_evaluations").number(p.total_evaluations);
          w.key("best_per_size").open_array();
          for (const auto& b : p.best.best) {
            w.open_object();
            write_ranked(w, b, meta.run_ids);
            w.close_object();
          }
          w.close_array();
          w.key("sweeps").open_array();
          for (const auto& s : p.per_size) write_sweep(w, s, meta.run_ids);
          w.close_array();
          w.close_object();
        } else if constexpr (std::is_same_v<T, GroupReport>) {
          w.open_object();
          w.key("key").string(to_string(p.key));
          w.key("groups").open_array();
          for (const auto& g : p.groups) {
            w.open_object();
            w.key("tag").string(g.tag);
            w.key("ensemble").strings(member_ids(g.ensemble, meta.run_ids));
            write_metrics(w, g.metrics, meta.labels);
            w.close_object();
          }
          w.close_array();
          w.close_object();
        } else {
          w.open_object();
          w.key("ensemble").strings(member_ids(p.ensemble, meta.run_ids));
          w.key("size").number(p.ensemble.size());
          write_metrics(w, p.metrics, meta.labels);
          w.close_object();
        }
      },
      doc.payload);
}

std::string emit_structured(const ReportDocument& doc) {
  const auto& meta = doc.metadata;
  JsonWriter w;
  w.open_object();
  w.key("kind").string(to_string(doc.kind()));
  w.key("metadata").open_object();
  w.key("manifest").string(meta.manifest);
  w.key("tie_policy").string(to_string(meta.policy));
  w.key("alignment").string(to_string(meta.alignment));
  w.key("samples").number(meta.samples);
  w.key("dropped_samples").number(meta.dropped_samples);
  w.key("labels").strings(meta.labels);
  w.key("runs").strings(meta.run_ids);
  if (meta.timestamp) w.key("timestamp").string(*meta.timestamp);
  if (meta.hostname) w.key("hostname").string(*meta.hostname);
  w.close_object();
  w.key("result");
  write_result(w, doc);
  w.close_object();
  return std::move(w).finish();
}

void sweep_rows(CsvWriter& csv, const SweepReport& r,
                std::span<const std::string> run_ids, bool with_size) {
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    const auto& e = r.ranked[i];
    const std::string rank = std::to_string(i + 1);
    const std::string label = ensemble_label(e.ensemble, run_ids);
    const std::string score = format_score(e.score);
    const std::string ties = std::to_string(e.ties);
    const std::string abst = std::to_string(e.abstentions);
    if (with_size) {
      csv.row(std::to_string(r.size), rank, label, score, ties, abst);
    } else {
      csv.row(rank, label, score, ties, abst);
    }
  }
}

std::string emit_delimited(const ReportDocument& doc) {
  const auto& meta = doc.metadata;
  CsvWriter csv;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IndividualTable>) {
          csv.row("model", "accuracy");
          for (const auto& row : p.rows) csv.row(row.run_id, format_score(row.score));
          if (p.ensemble) csv.row("ensemble", format_score(p.ensemble->score));
        } else if constexpr (std::is_same_v<T, SweepReport>) {
          csv.row("rank", "ensemble", "accuracy", "ties", "abstentions");
          sweep_rows(csv, p, meta.run_ids, false);
        } else if constexpr (std::is_same_v<T, SweepAll>) {
          csv.row("size", "rank", "ensemble", "accuracy", "ties", "abstentions");
          for (const auto& s : p.per_size) sweep_rows(csv, s, meta.run_ids, true);
        } else if constexpr (std::is_same_v<T, GroupReport>) {
          csv.row("key", "tag", "ensemble", "accuracy", "ties", "abstentions");
          for (const auto& g : p.groups) {
            csv.row(std::string(to_string(p.key)), g.tag,
                    ensemble_label(g.ensemble, meta.run_ids),
                    format_score(g.metrics.accuracy), std::to_string(g.metrics.ties),
                    std::to_string(g.metrics.abstentions));
          }
        } else {
          csv.row("model", "accuracy");
          csv.row("ensemble", format_score(p.metrics.accuracy));
        }
      },
      doc.payload);
  return std::move(csv).finish();
}

}  // namespace

std::string format_score(const Score& score) {
  if (score.total == 0) return "0.0000";
  __extension__ typedef unsigned __int128 Wide;
  const Wide scaled = Wide{score.correct} * 10000;
  std::uint64_t q = static_cast<std::uint64_t>(scaled / score.total);
  const Wide twice_rem = (scaled % score.total) * 2;
  if (twice_rem > score.total || (twice_rem == score.total && (q & 1U) != 0)) ++q;
  return fixed4_from_scaled(q, false);
}

std::string format_fixed4(double value) {
  if (!std::isfinite(value)) return "0.0000";
  // nearbyint honours the default round-to-nearest-even mode.
  const double scaled = std::nearbyint(std::abs(value) * 10000.0);
  return fixed4_from_scaled(static_cast<std::uint64_t>(scaled),
                            value < 0 && scaled != 0.0);
}

std::vector<std::string> member_ids(const EnsembleSpec& ensemble,
                                    std::span<const std::string> run_ids) {
  std::vector<std::string> ids;
  for (std::size_t i : ensemble.members()) {
    ids.push_back(i < run_ids.size() ? run_ids[i] : "#" + std::to_string(i));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string ensemble_label(const EnsembleSpec& ensemble,
                           std::span<const std::string> run_ids) {
  std::string label;
  for (const auto& id : member_ids(ensemble, run_ids)) {
    if (!label.empty()) label += '+';
    label += id;
  }
  return label;
}

ReportMetadata describe(const RunSet& runs, std::string manifest,
                        TiePolicy policy, AlignMode alignment) {
  ReportMetadata meta;
  meta.manifest = std::move(manifest);
  meta.policy = policy;
  meta.alignment = alignment;
  meta.samples = runs.sample_count();
  meta.dropped_samples = runs.dropped_samples();
  meta.labels = runs.labels().names();
  meta.run_ids = runs.run_ids();
  return meta;
}

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::kIndividualTable: return "individual-table";
    case ReportKind::kSweep: return "sweep";
    case ReportKind::kBestPerSize: return "best-per-size";
    case ReportKind::kGroups: return "groups";
    case ReportKind::kFuse: return "fuse";
  }
  return "unknown";
}

ReportKind ReportDocument::kind() const noexcept {
  return static_cast<ReportKind>(payload.index());
}

std::string_view to_string(Format format) {
  switch (format) {
    case Format::kStructured: return "json";
    case Format::kDelimited: return "csv";
    case Format::kPlot: return "plot";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view text) {
  for (auto f : {Format::kStructured, Format::kDelimited, Format::kPlot}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

std::string emit(const ReportDocument& doc, Format format) {
  switch (format) {
    case Format::kStructured:
      return emit_structured(doc);
    case Format::kDelimited:
      return emit_delimited(doc);
    case Format::kPlot:
      if (const auto* s = std::get_if<SweepReport>(&doc.payload)) {
        return emit_plot_data(*s, doc.metadata.run_ids);
      }
      if (const auto* a = std::get_if<SweepAll>(&doc.payload)) {
        return emit_plot_data(a->best);
      }
      if (const auto* g = std::get_if<GroupReport>(&doc.payload)) {
        return emit_plot_data(*g);
      }
      break;
  }
  throw Error(ErrorCode::kUnsupportedKindFormat,
              std::string(to_string(doc.kind())) + " reports have no " +
                  std::string(to_string(format)) + " rendering");
}

std::string emit_plot_data(const SweepReport& report,
                           std::span<const std::string> run_ids) {
  CsvWriter csv;
  csv.row("label", "accuracy");
  for (const auto& e : report.ranked) {
    csv.row(ensemble_label(e.ensemble, run_ids), format_score(e.score));
  }
  return std::move(csv).finish();
}

std::string emit_plot_data(const BestPerSize& best) {
  CsvWriter csv;
  csv.row("label", "accuracy");
  for (const auto& e : best.best) {
    csv.row("k=" + std::to_string(e.ensemble.size()), format_score(e.score));
  }
  return std::move(csv).finish();
}

std::string emit_plot_data(const GroupReport& report) {
  CsvWriter csv;
  csv.row("label", "accuracy");
  for (const auto& g : report.groups) csv.row(g.tag, format_score(g.metrics.accuracy));
  return std::move(csv).finish();
}

std::string serialize_run(const PredictionRun& run, const LabelSet& labels) {
  // One prediction per line keeps run files diff-friendly.
  std::string out = "{\"run_id\": " + quote_json(run.run_id) + ", \"predictions\": [";
  for (std::size_t i = 0; i < run.predictions.size(); ++i) {
    const auto& p = run.predictions[i];
    json row = json::object();
    row["sample_id"] = p.sample_id;
    row["label"] = labels.name(p.label);
    if (!p.confidence.empty()) row["confidence"] = p.confidence;
    out += i == 0 ? "\n  " : ",\n  ";
    out += row.dump(-1, ' ', false, json::error_handler_t::replace);
  }
  out += run.predictions.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::string serialize_manifest(const Manifest& manifest) {
  JsonWriter w;
  w.open_object();
  w.key("version").number(static_cast<std::uint64_t>(manifest.version));
  w.key("labels").strings(manifest.labels);
  w.key("truth").string(manifest.truth);
  w.key("runs").open_array();
  for (const auto& r : manifest.runs) {
    w.open_object();
    w.key("id").string(r.id);
    w.key("family").string(r.family);
    w.key("representation").string(r.representation);
    w.key("file").string(r.file);
    w.close_object();
  }
  w.close_array();
  w.close_object();
  return std::move(w).finish();
}

std::string serialize_truth(const GroundTruth& truth, const LabelSet& labels) {
  CsvWriter csv;
  csv.row("sample_id", "label");
  for (const auto& e : truth.entries()) csv.row(e.sample_id, labels.name(e.label));
  return std::move(csv).finish();
}

}  // namespace votesweep
