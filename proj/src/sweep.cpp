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

#include "votesweep/sweep.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "votesweep/voting.hpp"

namespace votesweep {
namespace {

RankedEnsemble evaluate_one(const EnsembleSpec& ensemble, const RunSet& runs,
                            TiePolicy policy) {
  const FusedPredictions fused = fuse(ensemble, runs, policy);
  return {ensemble, accuracy(fused.labels, runs.truth().labels()), fused.ties,
          fused.abstentions};
}

// Evaluates masks[i] into results[i]. Work is split into contiguous blocks
// per thread; results land at their enumeration index so the merge order
// never depends on scheduling.
std::vector<RankedEnsemble> evaluate_all(
    const std::vector<EnsembleSpec::Mask>& masks, const RunSet& runs,
    const SweepOptions& options) {
  const std::size_t n = runs.size();
  std::vector<RankedEnsemble> results;
  results.reserve(masks.size());
  for (auto m : masks) results.push_back({EnsembleSpec(m, n), {}, 0, 0});

  unsigned workers =
      options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(
                             workers, static_cast<unsigned>(
                                          std::max<std::size_t>(masks.size() / 64, 1))));

  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned w) {
    const std::size_t begin = masks.size() * w / workers;
    const std::size_t end = masks.size() * (w + 1) / workers;
    try {
      for (std::size_t i = begin; i < end; ++i) {
        results[i] = evaluate_one(results[i].ensemble, runs, options.policy);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ typedef unsigned __int128 Wide;
  Wide result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kInvalidSize, "binomial coefficient overflows");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<EnsembleSpec> enumerate_combinations(std::size_t n, std::size_t k) {
  std::vector<EnsembleSpec> out;
  if (k >= 1 && k <= n && n <= kMaxRuns) {
    out.reserve(static_cast<std::size_t>(binomial(n, k)));
  }
  for_each_combination(n, k, [&](EnsembleSpec::Mask m) { out.emplace_back(m, n); });
  return out;
}

bool ranks_before(const RankedEnsemble& a, const RankedEnsemble& b) noexcept {
  __extension__ typedef unsigned __int128 Wide;
  const Wide lhs = Wide{a.score.correct} * b.score.total;
  const Wide rhs = Wide{b.score.correct} * a.score.total;
  if (lhs != rhs) return lhs > rhs;
  return a.ensemble.mask() < b.ensemble.mask();
}

std::vector<IndividualRow> individual_table(const RunSet& runs) {
  std::vector<IndividualRow> rows;
  rows.reserve(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs.run(i);
    const FusedPredictions fused =
        fuse(EnsembleSpec(EnsembleSpec::Mask{1} << i, runs.size()), runs);
    rows.push_back({r.run_id, r.family, r.representation,
                    accuracy(fused.labels, runs.truth().labels())});
  }
  return rows;
}

SweepReport sweep_size(const RunSet& runs, std::size_t k,
                       const SweepOptions& options) {
  if (options.top_n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "top_n must be at least 1");
  }
  std::vector<EnsembleSpec::Mask> masks;
  for_each_combination(runs.size(), k,
                       [&](EnsembleSpec::Mask m) { masks.push_back(m); });

  std::vector<RankedEnsemble> results = evaluate_all(masks, runs, options);
  const std::size_t keep = std::min(options.top_n, results.size());
  std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep),
                    results.end(), ranks_before);
  results.erase(results.begin() + static_cast<std::ptrdiff_t>(keep), results.end());

  SweepReport report;
  report.size = k;
  report.total_combinations = masks.size();
  report.top_n = options.top_n;
  report.ranked = std::move(results);
  return report;
}

SweepAll sweep_all(const RunSet& runs, SizeRange sizes,
                   const SweepOptions& options) {
  if (sizes.first < 1 || sizes.first > sizes.last || sizes.last > runs.size()) {
    throw Error(ErrorCode::kInvalidSize,
                "size range " + std::to_string(sizes.first) + ".." +
                    std::to_string(sizes.last) + " not within 1.." +
                    std::to_string(runs.size()));
  }
  SweepAll out;
  for (std::size_t k = sizes.first; k <= sizes.last; ++k) {
    SweepReport report = sweep_size(runs, k, options);
    out.total_evaluations += report.total_combinations;
    out.best.best.push_back(report.ranked.front());
    out.per_size.push_back(std::move(report));
  }
  return out;
}

}  // namespace votesweep
