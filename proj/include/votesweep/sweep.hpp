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

// Exhaustive ensemble search: every size-k subset of the runs is fused and
// scored, then ranked by accuracy (descending) with ties broken by ascending
// mask value. Selection happens on the evaluation set itself; there is no
// held-out split.

#ifndef VOTESWEEP_SWEEP_HPP_
#define VOTESWEEP_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "votesweep/metrics.hpp"
#include "votesweep/model.hpp"

namespace votesweep {

// C(n, k); throws InvalidSize if the result does not fit in 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

// All C(n, k) masks with exactly k of the low n bits set, in ascending
// numeric order. Requires 1 <= k <= n <= 64.
std::vector<EnsembleSpec> enumerate_combinations(std::size_t n, std::size_t k);

// Calls fn(mask) for each combination without materializing the list.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn);

struct RankedEnsemble {
  EnsembleSpec ensemble;
  Score score;
  std::size_t ties = 0;
  std::size_t abstentions = 0;
};

// Strict weak order used for every ranking: higher accuracy first, then
// ascending mask. Scores are compared exactly by cross-multiplication.
bool ranks_before(const RankedEnsemble& a, const RankedEnsemble& b) noexcept;

struct IndividualRow {
  std::string run_id;
  std::string family;
  std::string representation;
  Score score;
};

// One row per run in manifest order.
std::vector<IndividualRow> individual_table(const RunSet& runs);

inline constexpr std::size_t kKeepAll = std::numeric_limits<std::size_t>::max();

struct SweepOptions {
  TiePolicy policy = TiePolicy::kLowestLabelIndex;
  std::size_t top_n = 10;
  // Worker threads; 0 picks the hardware concurrency. Output does not
  // depend on this value.
  unsigned threads = 0;
};

struct SweepReport {
  std::size_t size = 0;
  std::uint64_t total_combinations = 0;
  std::size_t top_n = 0;
  // min(top_n, total_combinations) entries in rank order.
  std::vector<RankedEnsemble> ranked;
};

SweepReport sweep_size(const RunSet& runs, std::size_t k,
                       const SweepOptions& options = {});

struct SizeRange {
  std::size_t first = 1;
  std::size_t last = 1;
};

struct BestPerSize {
  // Entry i is the best ensemble of size first + i.
  std::vector<RankedEnsemble> best;
};

struct SweepAll {
  BestPerSize best;
  std::vector<SweepReport> per_size;
  std::uint64_t total_evaluations = 0;
};

SweepAll sweep_all(const RunSet& runs, SizeRange sizes,
                   const SweepOptions& options = {});

// --- implementation ---------------------------------------------------------

template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k == 0 || k > n || n > kMaxRuns) {
    throw Error(ErrorCode::kInvalidSize,
                "need 1 <= k <= n <= 64, got n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
  }
  using Mask = EnsembleSpec::Mask;
  const Mask first = k == kMaxRuns ? ~Mask{0} : (Mask{1} << k) - 1;
  const Mask last = first << (n - k);
  Mask x = first;
  while (true) {
    fn(x);
    if (x == last) break;
    // Gosper's hack: next larger integer with the same popcount.
    const Mask low = x & (~x + 1);
    const Mask ripple = x + low;
    x = (((ripple ^ x) >> 2) / low) | ripple;
  }
}

}  // namespace votesweep

#endif  // VOTESWEEP_SWEEP_HPP_
