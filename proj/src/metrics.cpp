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

#include "votesweep/metrics.hpp"

#include <algorithm>
#include <string>

namespace votesweep {
namespace {

void check_lengths(std::span<const Label> predicted,
                   std::span<const Label> truth) {
  if (predicted.empty() && truth.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no samples to score");
  }
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(predicted.size()) + " predictions vs " +
                    std::to_string(truth.size()) + " truth labels");
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t classes, bool abstain_column)
    : classes_(classes),
      abstain_column_(abstain_column),
      cells_(classes * (classes + (abstain_column ? 1 : 0)), 0) {}

std::size_t ConfusionMatrix::at(std::size_t truth, std::size_t predicted) const {
  if (truth >= classes_ || predicted >= columns()) {
    throw Error(ErrorCode::kInvalidArgument, "confusion cell out of range");
  }
  return cells_[truth * columns() + predicted];
}

std::size_t ConfusionMatrix::abstained(std::size_t truth) const {
  return abstain_column_ ? at(truth, classes_) : 0;
}

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t sum = 0;
  for (std::size_t c : cells_) sum += c;
  return sum;
}

std::size_t ConfusionMatrix::trace() const noexcept {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < classes_; ++c) sum += cells_[c * columns() + c];
  return sum;
}

void ConfusionMatrix::add(Label truth, Label predicted) {
  if (truth < 0 || static_cast<std::size_t>(truth) >= classes_) {
    throw Error(ErrorCode::kUnknownLabel,
                "truth label " + std::to_string(truth) + " out of range");
  }
  std::size_t column;
  if (predicted == kAbstain) {
    if (!abstain_column_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "abstention recorded without an abstain column");
    }
    column = classes_;
  } else if (predicted < 0 || static_cast<std::size_t>(predicted) >= classes_) {
    throw Error(ErrorCode::kUnknownLabel,
                "predicted label " + std::to_string(predicted) + " out of range");
  } else {
    column = static_cast<std::size_t>(predicted);
  }
  ++cells_[static_cast<std::size_t>(truth) * columns() + column];
}

Score accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
  check_lengths(predicted, truth);
  Score score{0, truth.size()};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] != kAbstain && predicted[i] == truth[i]) ++score.correct;
  }
  return score;
}

ConfusionMatrix confusion(std::span<const Label> predicted,
                          std::span<const Label> truth, std::size_t classes) {
  check_lengths(predicted, truth);
  const bool abstained =
      std::find(predicted.begin(), predicted.end(), kAbstain) != predicted.end();
  ConfusionMatrix cm(classes, abstained);
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

std::vector<ClassMetrics> per_class(const ConfusionMatrix& cm) {
  const std::size_t n = cm.classes();
  std::vector<ClassMetrics> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t tp = cm.at(c, c);
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t k = 0; k < n; ++k) predicted += cm.at(k, c);
    for (std::size_t k = 0; k < cm.columns(); ++k) actual += cm.at(c, k);
    auto& m = out[c];
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, actual);
    const double denom = m.precision + m.recall;
    m.f1 = denom == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / denom;
    m.support = actual;
  }
  return out;
}

MetricsBundle evaluate(const FusedPredictions& fused, const GroundTruth& truth) {
  MetricsBundle b;
  b.accuracy = accuracy(fused.labels, truth.labels());
  b.confusion = confusion(fused.labels, truth.labels(), truth.class_count());
  b.per_class = per_class(b.confusion);
  b.ties = fused.ties;
  b.abstentions = fused.abstentions;
  return b;
}

}  // namespace votesweep
