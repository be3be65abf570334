# Copyright 2026 The votesweep Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Majority-voting ensemble evaluation over classifier prediction runs."""

from ._core import (
    ABSTAIN,
    VotesweepError,
    Workspace,
    accuracy,
    binomial,
    cli,
    enumerate_combinations,
    evaluate_groups,
    fuse,
    individual_table,
    majority_vote,
    sweep_all,
    sweep_size,
    vote_counts,
)

__all__ = [
    "ABSTAIN",
    "VotesweepError",
    "Workspace",
    "accuracy",
    "binomial",
    "cli",
    "enumerate_combinations",
    "evaluate_groups",
    "fuse",
    "individual_table",
    "majority_vote",
    "sweep_all",
    "sweep_size",
    "vote_counts",
]
