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

// Test-only reference implementations. Nothing here calls into the voting,
// metrics or sweep modules; the helpers re-derive every value from the raw
// labels so they can serve as oracles for those modules.

#ifndef VOTESWEEP_TESTS_ORACLE_HPP_
#define VOTESWEEP_TESTS_ORACLE_HPP_

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "votesweep/model.hpp"

namespace votesweep::testing {

// Count, argmax, then policy; written from the definitions with ordered maps.
inline int oracle_vote(const std::vector<int>& votes,
                       const std::vector<std::vector<double>>& confidences,
                       int classes, TiePolicy policy) {
  std::map<int, int> tally;
  for (int v : votes) tally[v] += 1;
  int best = 0;
  for (const auto& [label, count] : tally) best = std::max(best, count);
  std::set<int> tied;
  for (const auto& [label, count] : tally) {
    if (count == best) tied.insert(label);
  }
  if (tied.size() == 1) return *tied.begin();

  switch (policy) {
    case TiePolicy::kLowestLabelIndex:
      return *tied.begin();
    case TiePolicy::kAbstain:
      return kAbstain;
    case TiePolicy::kPriorityOrder:
      for (int v : votes) {
        if (tied.count(v)) return v;
      }
      return *tied.begin();
    case TiePolicy::kHighestMeanConfidence: {
      int winner = -1;
      double winner_mean = -1.0;
      for (int c = 0; c < classes; ++c) {
        if (!tied.count(c)) continue;
        double mean = 0.0;
        for (const auto& row : confidences) mean += row[static_cast<std::size_t>(c)];
        mean /= static_cast<double>(confidences.size());
        if (mean > winner_mean) {
          winner = c;
          winner_mean = mean;
        }
      }
      return winner;
    }
  }
  return -2;
}

struct OracleResult {
  std::uint64_t mask;
  std::size_t correct;
  std::size_t total;
};

// Brute-force fused accuracy of `mask`, re-tallying every sample.
inline OracleResult oracle_accuracy(const RunSet& runs, std::uint64_t mask,
                                    TiePolicy policy) {
  const int classes = static_cast<int>(runs.class_count());
  std::size_t correct = 0;
  for (std::size_t s = 0; s < runs.sample_count(); ++s) {
    std::vector<int> votes;
    std::vector<std::vector<double>> conf;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (((mask >> r) & 1U) == 0) continue;
      votes.push_back(runs.run(r).labels[s]);
      auto c = runs.run(r).confidence(s, runs.class_count());
      conf.emplace_back(c.begin(), c.end());
    }
    const int fused = oracle_vote(votes, conf, classes, policy);
    if (fused != kAbstain && fused == runs.truth().labels()[s]) ++correct;
  }
  return {mask, correct, runs.sample_count()};
}

// Every size-k mask over n runs by scanning all 2^n values, ranked by
// accuracy descending then mask ascending.
inline std::vector<OracleResult> oracle_ranking(const RunSet& runs, std::size_t k,
                                                TiePolicy policy) {
  std::vector<OracleResult> out;
  const std::uint64_t limit = std::uint64_t{1} << runs.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::size_t bits = 0;
    for (std::uint64_t m = mask; m != 0; m >>= 1) bits += m & 1U;
    if (bits == k) out.push_back(oracle_accuracy(runs, mask, policy));
  }
  std::sort(out.begin(), out.end(), [](const OracleResult& a, const OracleResult& b) {
    if (a.correct != b.correct) return a.correct > b.correct;
    return a.mask < b.mask;
  });
  return out;
}

inline std::vector<double> random_confidence(std::mt19937_64& rng, int label,
                                             int classes) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(classes));
  for (auto& x : w) x = u(rng);
  w[static_cast<std::size_t>(label)] = *std::max_element(w.begin(), w.end()) + 0.1;
  double sum = 0.0;
  for (double x : w) sum += x;
  for (auto& x : w) x /= sum;
  return w;
}

// Seeded random prediction runs. Each run is right with probability
// `skill`, otherwise picks a uniformly random wrong class.
inline std::vector<PredictionRun> random_runs(std::uint64_t seed, std::size_t n,
                                              const std::vector<int>& truth,
                                              int classes, bool with_confidence,
                                              double skill = 0.6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, classes - 2);
  static constexpr std::string_view kFamilies[] = {"camelbert", "arabert", "asafayabert"};
  static constexpr std::string_view kReps[] = {"post", "refined", "ner", "summarized"};
  std::vector<PredictionRun> runs;
  for (std::size_t r = 0; r < n; ++r) {
    PredictionRun run;
    run.run_id = "r" + std::to_string(r);
    run.family = std::string(kFamilies[r / 4 % 3]);
    run.representation = std::string(kReps[r % 4]);
    for (std::size_t s = 0; s < truth.size(); ++s) {
      int label = truth[s];
      if (u(rng) >= skill) {
        label = pick(rng);
        if (label >= truth[s]) ++label;
      }
      Prediction p{"s" + std::to_string(s), label, {}};
      if (with_confidence) p.confidence = random_confidence(rng, label, classes);
      run.predictions.push_back(std::move(p));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

inline std::vector<std::string> label_names(int classes) {
  std::vector<std::string> names;
  for (int c = 0; c < classes; ++c) names.push_back("class" + std::to_string(c));
  return names;
}

// Random truth plus `n` runs, aligned.
inline RunSet random_runset(std::uint64_t seed, std::size_t n, std::size_t samples,
                            int classes, bool with_confidence = false,
                            double skill = 0.6) {
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_int_distribution<int> label(0, classes - 1);
  std::vector<int> truth_labels(samples);
  std::vector<TruthEntry> entries;
  for (std::size_t s = 0; s < samples; ++s) {
    truth_labels[s] = label(rng);
    entries.push_back({"s" + std::to_string(s), truth_labels[s]});
  }
  const LabelSet labels(label_names(classes));
  const GroundTruth truth(entries, labels.size());
  const auto runs = random_runs(seed, n, truth_labels, classes, with_confidence, skill);
  return align(runs, truth, labels);
}

// RunSet over samples s0..sN-1 from explicit label vectors.
inline RunSet make_runset(const std::vector<std::vector<Label>>& run_labels,
                          const std::vector<Label>& truth_labels, int classes,
                          const std::vector<std::vector<std::vector<double>>>& confidences = {}) {
  std::vector<TruthEntry> entries;
  for (std::size_t s = 0; s < truth_labels.size(); ++s) {
    entries.push_back({"s" + std::to_string(s), truth_labels[s]});
  }
  const LabelSet labels(label_names(classes));
  std::vector<PredictionRun> runs;
  for (std::size_t r = 0; r < run_labels.size(); ++r) {
    PredictionRun run{"r" + std::to_string(r), "other", "other", {}};
    for (std::size_t s = 0; s < run_labels[r].size(); ++s) {
      Prediction p{"s" + std::to_string(s), run_labels[r][s], {}};
      if (r < confidences.size() && !confidences[r].empty()) p.confidence = confidences[r][s];
      run.predictions.push_back(std::move(p));
    }
    runs.push_back(std::move(run));
  }
  return align(runs, GroundTruth(entries, labels.size()), labels);
}

inline std::filesystem::path fixture_dir() {
  return std::filesystem::path(VOTESWEEP_FIXTURE_DIR);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("votesweep_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace votesweep::testing

#endif  // VOTESWEEP_TESTS_ORACLE_HPP_
