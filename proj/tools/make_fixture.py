#!/usr/bin/env python3
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
"""Generates the synthetic 12-run fixture (3 families x 4 representations).

Predictions are drawn so that each run hits a target accuracy and wrong
answers cluster on a per-sample confuser class, which gives the ensembles
correlated errors like real fine-tuned models. Every run carries softmax-like
confidence vectors whose argmax is the hard label.

    python3 tools/make_fixture.py tests/fixtures/twelve_runs
"""

import argparse
import json
import os
import random

LABELS = [
    "Internal Medicine",
    "Orthopedics",
    "Neurosurgery",
    "Dermatology",
    "Ophthalmology",
    "Otolaryngology",
    "Gynecology",
]
FAMILIES = ["camelbert", "arabert", "asafayabert"]
REPRESENTATIONS = ["post", "refined", "ner", "summarized"]
TARGET_ACCURACY = {
    ("camelbert", "post"): 0.70, ("camelbert", "refined"): 0.75,
    ("camelbert", "ner"): 0.74, ("camelbert", "summarized"): 0.65,
    ("arabert", "post"): 0.72, ("arabert", "refined"): 0.72,
    ("arabert", "ner"): 0.69, ("arabert", "summarized"): 0.66,
    ("asafayabert", "post"): 0.75, ("asafayabert", "refined"): 0.75,
    ("asafayabert", "ner"): 0.74, ("asafayabert", "summarized"): 0.75,
}


def confidence_row(rng, label, classes):
    weights = [rng.random() for _ in range(classes)]
    weights[label] = max(weights) + 0.25 + rng.random()
    total = sum(weights)
    return [w / total for w in weights]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir")
    parser.add_argument("--samples", type=int, default=320)
    parser.add_argument("--seed", type=int, default=20250601)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    classes = len(LABELS)
    skew = [0.34, 0.16, 0.14, 0.10, 0.10, 0.08, 0.08]
    samples = [f"q{i:04d}" for i in range(args.samples)]
    truth = [rng.choices(range(classes), weights=skew)[0] for _ in samples]
    confuser = [rng.choice([c for c in range(classes) if c != t]) for t in truth]
    # Hard samples are missed by most models.
    difficulty = [rng.random() for _ in samples]

    os.makedirs(os.path.join(args.out_dir, "runs"), exist_ok=True)
    with open(os.path.join(args.out_dir, "truth.csv"), "w", encoding="utf-8", newline="") as f:
        f.write("sample_id,label\n")
        for sid, t in zip(samples, truth):
            f.write(f"{sid},{LABELS[t]}\n")

    manifest = {"version": 1, "labels": LABELS, "truth": "truth.csv", "runs": []}
    for family in FAMILIES:
        for rep in REPRESENTATIONS:
            run_id = f"{family}_{rep}"
            target = TARGET_ACCURACY[(family, rep)]
            preds = []
            for i, sid in enumerate(samples):
                p_correct = min(0.98, max(0.05, target + 0.9 * (0.5 - difficulty[i])))
                if rng.random() < p_correct:
                    label = truth[i]
                elif rng.random() < 0.6:
                    label = confuser[i]
                else:
                    label = rng.choice([c for c in range(classes) if c != truth[i]])
                preds.append({
                    "sample_id": sid,
                    "label": LABELS[label],
                    "confidence": confidence_row(rng, label, classes),
                })
            path = os.path.join("runs", run_id + ".json")
            with open(os.path.join(args.out_dir, path), "w", encoding="utf-8") as f:
                f.write(json.dumps({"run_id": run_id, "predictions": preds},
                                   ensure_ascii=False, indent=1))
                f.write("\n")
            manifest["runs"].append({"id": run_id, "family": family,
                                     "representation": rep, "file": path})

    with open(os.path.join(args.out_dir, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, ensure_ascii=False, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
