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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "votesweep/cli.hpp"
#include "votesweep/grouping.hpp"
#include "votesweep/ingest.hpp"
#include "votesweep/report.hpp"
#include "votesweep/sweep.hpp"
#include "votesweep/voting.hpp"

namespace py = pybind11;
using namespace votesweep;

namespace {

TiePolicy policy_arg(const std::string& name) {
  auto p = parse_tie_policy(name);
  if (!p) throw py::value_error("unknown tie policy: " + name);
  return *p;
}

EnsembleSpec select(const RunSet& runs, const std::optional<std::vector<std::string>>& ids) {
  if (!ids) return EnsembleSpec::all(runs.size());
  EnsembleSpec::Mask mask = 0;
  for (const auto& id : *ids) {
    auto i = runs.find(id);
    if (!i) throw py::key_error("unknown run id: " + id);
    mask |= EnsembleSpec::Mask{1} << *i;
  }
  return EnsembleSpec(mask, runs.size());
}

py::dict ranked_dict(const RankedEnsemble& r, const RunSet& runs) {
  py::dict d;
  d["mask"] = r.ensemble.mask();
  d["ensemble"] = member_ids(r.ensemble, runs.run_ids());
  d["accuracy"] = r.score.value();
  d["correct"] = r.score.correct;
  d["total"] = r.score.total;
  d["ties"] = r.ties;
  d["abstentions"] = r.abstentions;
  return d;
}

py::dict sweep_dict(const SweepReport& s, const RunSet& runs) {
  py::list ranked;
  for (const auto& r : s.ranked) ranked.append(ranked_dict(r, runs));
  py::dict d;
  d["size"] = s.size;
  d["total_combinations"] = s.total_combinations;
  d["ranked"] = ranked;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Majority-voting fusion, exhaustive ensemble sweeps and tag groups";
  m.attr("ABSTAIN") = kAbstain;
  py::register_exception<Error>(m, "VotesweepError", PyExc_ValueError);

  m.def("vote_counts", [](const std::vector<Label>& votes, std::size_t classes) {
    for (Label v : votes) {
      if (v < 0 || static_cast<std::size_t>(v) >= classes) {
        throw py::value_error("vote out of range");
      }
    }
    return vote_counts(votes, classes);
  }, py::arg("votes"), py::arg("class_count"));

  m.def("majority_vote",
        [](const std::vector<Label>& votes, std::size_t classes, const std::string& policy,
           const std::optional<std::vector<std::vector<double>>>& confidences) {
          std::vector<std::span<const double>> views;
          if (confidences) {
            for (const auto& c : *confidences) views.emplace_back(c);
          }
          VoteContext ctx{"", {}, votes, views};
          return majority_vote(ctx, classes, policy_arg(policy));
        },
        py::arg("votes"), py::arg("class_count"), py::arg("policy") = "lowest-label",
        py::arg("confidences") = py::none(),
        "Winning label for one sample; ABSTAIN when a tie is withheld.");

  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def("enumerate_combinations", [](std::size_t n, std::size_t k) {
    std::vector<EnsembleSpec::Mask> masks;
    for_each_combination(n, k, [&](EnsembleSpec::Mask mask) { masks.push_back(mask); });
    return masks;
  }, py::arg("n"), py::arg("k"));

  m.def("accuracy", [](const std::vector<Label>& predicted, const std::vector<Label>& truth) {
    return accuracy(predicted, truth).value();
  }, py::arg("predicted"), py::arg("truth"));

  py::class_<Workspace>(m, "Workspace")
      .def_static("load", [](const std::filesystem::path& path, const std::string& mode) {
        auto align = parse_align_mode(mode);
        if (!align) throw py::value_error("unknown alignment mode: " + mode);
        return load_workspace(path, *align);
      }, py::arg("manifest"), py::arg("align") = "strict")
      .def_property_readonly("run_ids", [](const Workspace& w) { return w.runs.run_ids(); })
      .def_property_readonly("labels", [](const Workspace& w) { return w.runs.labels().names(); })
      .def_property_readonly("sample_count", [](const Workspace& w) { return w.runs.sample_count(); })
      .def_property_readonly("dropped_samples", [](const Workspace& w) { return w.runs.dropped_samples(); })
      .def("__len__", [](const Workspace& w) { return w.runs.size(); });

  m.def("fuse",
        [](const Workspace& w, const std::optional<std::vector<std::string>>& runs,
           const std::string& policy) {
          const EnsembleSpec spec = select(w.runs, runs);
          const FusedPredictions fused = fuse(spec, w.runs, policy_arg(policy));
          py::dict d;
          d["labels"] = fused.labels;
          d["ties"] = fused.ties;
          d["abstentions"] = fused.abstentions;
          d["accuracy"] = accuracy(fused.labels, w.runs.truth().labels()).value();
          return d;
        },
        py::arg("workspace"), py::arg("runs") = py::none(),
        py::arg("policy") = "lowest-label");

  m.def("individual_table", [](const Workspace& w) {
    std::vector<std::pair<std::string, double>> rows;
    for (const auto& r : individual_table(w.runs)) rows.emplace_back(r.run_id, r.score.value());
    return rows;
  }, py::arg("workspace"));

  m.def("sweep_size",
        [](const Workspace& w, std::size_t k, const std::string& policy, std::size_t top_n) {
          return sweep_dict(sweep_size(w.runs, k, {policy_arg(policy), top_n, 0}), w.runs);
        },
        py::arg("workspace"), py::arg("k"), py::arg("policy") = "lowest-label",
        py::arg("top_n") = 10);

  m.def("sweep_all",
        [](const Workspace& w, std::size_t first, std::size_t last, const std::string& policy,
           std::size_t top_n) {
          const SweepAll all = sweep_all(w.runs, {first, last}, {policy_arg(policy), top_n, 0});
          py::list best;
          for (const auto& b : all.best.best) best.append(ranked_dict(b, w.runs));
          py::list sweeps;
          for (const auto& s : all.per_size) sweeps.append(sweep_dict(s, w.runs));
          py::dict d;
          d["best_per_size"] = best;
          d["sweeps"] = sweeps;
          d["total_evaluations"] = all.total_evaluations;
          return d;
        },
        py::arg("workspace"), py::arg("first"), py::arg("last"),
        py::arg("policy") = "lowest-label", py::arg("top_n") = 10);

  m.def("evaluate_groups",
        [](const Workspace& w, const std::string& key, const std::string& policy) {
          auto k = parse_group_key(key);
          if (!k) throw py::value_error("key must be representation or family");
          py::dict out;
          for (const auto& g : evaluate_groups(w.runs, *k, policy_arg(policy)).groups) {
            py::dict d;
            d["members"] = g.members;
            d["accuracy"] = g.metrics.accuracy.value();
            d["ties"] = g.metrics.ties;
            out[py::str(g.tag)] = d;
          }
          return out;
        },
        py::arg("workspace"), py::arg("key"), py::arg("policy") = "lowest-label");

  m.def("cli", [](const std::vector<std::string>& args) {
    const auto outcome = cli::run_cli(args);
    return py::make_tuple(outcome.exit_code, py::bytes(outcome.out), outcome.err);
  }, py::arg("args"), "Run the command-line interface; returns (exit_code, stdout bytes, stderr).");
}
