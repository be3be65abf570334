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

#ifndef VOTESWEEP_METRICS_HPP_
#define VOTESWEEP_METRICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "votesweep/model.hpp"
#include "votesweep/voting.hpp"

namespace votesweep {

// Exact accuracy as a count pair. Abstentions never count as correct.
struct Score {
  std::size_t correct = 0;
  std::size_t total = 0;

  double value() const noexcept {
    return total == 0 ? 0.0
                      : static_cast<double>(correct) / static_cast<double>(total);
  }
  bool operator==(const Score&) const = default;
};

// Rows are true classes, columns predicted classes. When any abstention
// occurred an extra trailing column counts them per true class.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::size_t classes, bool abstain_column);

  std::size_t classes() const noexcept { return classes_; }
  bool has_abstain_column() const noexcept { return abstain_column_; }
  std::size_t columns() const noexcept { return classes_ + (abstain_column_ ? 1 : 0); }

  std::size_t at(std::size_t truth, std::size_t predicted) const;
  std::size_t abstained(std::size_t truth) const;
  std::size_t total() const noexcept;
  std::size_t trace() const noexcept;

  void add(Label truth, Label predicted);

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t classes_;
  bool abstain_column_;
  std::vector<std::size_t> cells_;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct MetricsBundle {
  Score accuracy;
  std::vector<ClassMetrics> per_class;
  ConfusionMatrix confusion{1, false};
  std::size_t ties = 0;
  std::size_t abstentions = 0;
};

// Throws LengthMismatch when lengths differ and EmptyInput when both are empty.
Score accuracy(std::span<const Label> predicted, std::span<const Label> truth);

ConfusionMatrix confusion(std::span<const Label> predicted,
                          std::span<const Label> truth, std::size_t classes);

// 0/0 is taken as 0 for precision, recall and F1.
std::vector<ClassMetrics> per_class(const ConfusionMatrix& cm);

MetricsBundle evaluate(const FusedPredictions& fused, const GroundTruth& truth);

}  // namespace votesweep

#endif  // VOTESWEEP_METRICS_HPP_
