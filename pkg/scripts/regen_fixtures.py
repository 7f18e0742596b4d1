#!/usr/bin/env python3
"""Regenerate the committed synthetic fixture set and its golden values.

The fixture set is 3 families x 10 seeds at one configuration, 240 s, noise
amplitude 5. Tests assert that the committed files still match what the
generator produces, then run the matching pipeline over them; the golden
JSON freezes a sample of pipeline correlations. Re-run this only when the
templates deliberately change, and expect acceptance fixtures to shift.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from tracematch.dtw import dtw_align
from tracematch.preprocess import FilterSpec, preprocess
from tracematch.similarity import correlation
from tracematch.synth import SynthSpec, WorkloadFamily, generate
from tracematch.trace import ConfigParams

FIXTURE_DIR = ROOT / "tests" / "fixtures" / "synthetic"
GOLDEN_PATH = ROOT / "tests" / "fixtures" / "golden" / "fixture_pipeline.json"

PARAMS = ConfigParams(mappers=11, reducers=6, fs_split_mb=20, input_mb=30)
DURATION = 240
NOISE = 5.0
SEEDS = range(10)
FAMILIES = (
    WorkloadFamily.WORDCOUNT_LIKE,
    WorkloadFamily.EXIM_LIKE,
    WorkloadFamily.TERASORT_LIKE,
)


def fixture_name(family: WorkloadFamily, seed: int) -> str:
    return f"{family.value}_{seed:02d}.csv"


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)

    preprocessed = {}
    for family in FAMILIES:
        for seed in SEEDS:
            spec = SynthSpec(
                params=PARAMS,
                family=family,
                duration_s=DURATION,
                noise_amplitude=NOISE,
                seed=seed,
            )
            series = generate(spec)
            text = "\n".join(repr(v) for v in series.samples.tolist()) + "\n"
            (FIXTURE_DIR / fixture_name(family, seed)).write_text(text)
            preprocessed[(family.value, seed)] = preprocess(series, FilterSpec())

    def pipeline_corr(a, b) -> float:
        alignment = dtw_align(preprocessed[a], preprocessed[b])
        return correlation(preprocessed[a], alignment.expanded_reference)

    sample_pairs = [
        ["wordcount", 0, "wordcount", 1],
        ["wordcount", 2, "wordcount", 7],
        ["exim", 0, "exim", 1],
        ["terasort", 3, "terasort", 8],
        ["wordcount", 0, "exim", 0],
        ["wordcount", 5, "terasort", 5],
        ["exim", 9, "terasort", 2],
    ]
    golden = {
        "params": [PARAMS.mappers, PARAMS.reducers, PARAMS.fs_split_mb, PARAMS.input_mb],
        "duration_s": DURATION,
        "noise_amplitude": NOISE,
        "pair_corrs": [
            {
                "query": [fa, sa],
                "reference": [fb, sb],
                "corr": pipeline_corr((fa, sa), (fb, sb)),
            }
            for fa, sa, fb, sb in sample_pairs
        ],
    }
    GOLDEN_PATH.write_text(json.dumps(golden, indent=2) + "\n")
    print(f"wrote {len(FAMILIES) * len(SEEDS)} fixtures and {GOLDEN_PATH.name}")


if __name__ == "__main__":
    main()
