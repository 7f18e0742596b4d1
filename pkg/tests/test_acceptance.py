"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
execute. Criteria operate on the committed synthetic fixture set where real
cluster traces would be needed otherwise.
"""

import math
import time

import numpy as np

from tracematch.dtw import dtw_align
from tracematch.ingest import UtilizationMetric, parse_sar
from tracematch.preprocess import FilterSpec, design_chebyshev1, preprocess
from tracematch.refdb import ReferenceDb
from tracematch.report import render_machine, render_table
from tracematch.similarity import correlation
from tracematch.synth import SynthSpec, WorkloadFamily, generate
from tracematch.trace import ConfigParams, CpuTimeSeries, ProfileEntry, TraceStage
from tracematch.workflow import match_application, profile_application

from conftest import PARAMS_A, PARAMS_B, PARAMS_C, PARAMS_D, normalized
from oracles import brute_force_align, digital_magnitude

CONFIGS = [PARAMS_A, PARAMS_B, PARAMS_C, PARAMS_D]
FAMILIES = {
    "wordcount": WorkloadFamily.WORDCOUNT_LIKE,
    "exim": WorkloadFamily.EXIM_LIKE,
    "terasort": WorkloadFamily.TERASORT_LIKE,
}
FIXTURE_SEEDS = range(10)


def _report(number: int, description: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} [{status}] {description}{suffix}")
    assert ok, f"criterion {number} failed: {description}{suffix}"


def test_criterion_1_dtw_oracle_equivalence():
    grid = [0.0, 0.25, 0.5, 0.75, 1.0]  # dyadic: both routes sum exactly
    rng = np.random.default_rng(20110526)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(2, 7))
        xs = [grid[k] for k in rng.integers(0, 5, n)]
        ys = [grid[k] for k in rng.integers(0, 5, m)]
        got = dtw_align(normalized(xs), normalized(ys)).distance
        expected = brute_force_align(xs, ys)[0]
        if got != expected:
            mismatches += 1
    elapsed = time.perf_counter() - start
    _report(
        1,
        "DTW distance equals exhaustive warp-path enumeration on 1000 pairs",
        mismatches == 0 and elapsed < 10.0,
        f"{mismatches} mismatches, {elapsed:.2f}s",
    )


def test_criterion_2_worked_alignment_example():
    x = normalized([0.0, 1.0, 2.0])
    y = normalized([0.0, 2.0])
    result = dtw_align(x, y)
    corr = correlation(x, result.expanded_reference)
    ok = (
        result.distance == 1.0
        and result.path == ((1, 1), (2, 2), (3, 2))
        and result.expanded_reference.samples.tolist() == [0.0, 2.0, 2.0]
        and abs(corr - 0.8660) <= 1e-4
    )
    _report(
        2,
        "worked example: distance 1, path [(1,1),(2,2),(3,2)], Y'=[0,2,2], corr 0.8660",
        ok,
        f"distance={result.distance}, corr={corr:.6f}",
    )


def _build_reference_db() -> ReferenceDb:
    db = ReferenceDb()
    for offset, (app_id, family) in enumerate(sorted(FAMILIES.items())):
        runs = []
        for idx, params in enumerate(CONFIGS):
            spec = SynthSpec(
                params=params,
                family=family,
                duration_s=120,
                noise_amplitude=5.0,
                seed=1000 * offset + idx,
            )
            runs.append((params, generate(spec)))
        profile_application(app_id, runs, db)
    return db


def _self_runs(app_id: str, db_offset: int):
    family = FAMILIES[app_id]
    return [
        (
            params,
            generate(
                SynthSpec(
                    params=params,
                    family=family,
                    duration_s=120,
                    noise_amplitude=5.0,
                    seed=1000 * db_offset + idx,
                )
            ),
        )
        for idx, params in enumerate(CONFIGS)
    ]


def test_criterion_3_self_identification():
    db = _build_reference_db()
    ok = True
    details = []
    for offset, app_id in enumerate(sorted(FAMILIES)):
        report = match_application(_self_runs(app_id, offset), db)
        unanimous = report.votes[app_id] == len(CONFIGS) and sum(
            report.votes.values()
        ) == len(CONFIGS)
        corr_ok = all(
            c.winner == app_id and abs(c.scores[0].corr - 1.0) <= 1e-9
            for c in report.per_config
        )
        if report.verdict != app_id or not unanimous or not corr_ok:
            ok = False
        details.append(f"{app_id}: verdict={report.verdict}, votes={report.votes[app_id]}")
    _report(3, "each app's own traces self-identify with corr 1.0 and unanimous votes", ok, "; ".join(details))


def _fixture_pipeline_corrs():
    """Preprocess the committed fixture set and correlate all same-config pairs."""
    spec = FilterSpec()
    pre = {}
    for name, family in FAMILIES.items():
        for seed in FIXTURE_SEEDS:
            series = generate(
                SynthSpec(
                    params=PARAMS_A,
                    family=family,
                    duration_s=240,
                    noise_amplitude=5.0,
                    seed=seed,
                )
            )
            pre[(name, seed)] = preprocess(series, spec)

    def corr_of(a, b):
        alignment = dtw_align(pre[a], pre[b])
        return correlation(pre[a], alignment.expanded_reference)

    names = sorted(FAMILIES)
    within = {}
    cross = {}
    for ni, name_a in enumerate(names):
        within[name_a] = [
            corr_of((name_a, i), (name_a, j))
            for i in FIXTURE_SEEDS
            for j in FIXTURE_SEEDS
            if i < j
        ]
        for name_b in names[ni + 1 :]:
            cross[(name_a, name_b)] = [
                corr_of((name_a, i), (name_b, j))
                for i in FIXTURE_SEEDS
                for j in FIXTURE_SEEDS
            ]
    return within, cross


def test_criterion_4_fixture_diagonal_dominance():
    start = time.perf_counter()
    within, cross = _fixture_pipeline_corrs()
    all_within = [c for values in within.values() for c in values]
    all_cross = [c for values in cross.values() for c in values]
    wins = sum(1 for w in all_within for c in all_cross if w > c)
    fraction = wins / (len(all_within) * len(all_cross))
    wc_exim = float(np.mean(cross[("exim", "wordcount")]))
    exim_ts = float(np.mean(cross[("exim", "terasort")]))
    elapsed = time.perf_counter() - start
    ok = fraction >= 0.90 and wc_exim > exim_ts and elapsed < 60.0
    _report(
        4,
        "fixture set: within-family corr dominates cross-family; wordcount~exim > exim~terasort",
        ok,
        f"dominance={fraction:.4f}, wc-exim={wc_exim:.4f}, exim-ts={exim_ts:.4f}, {elapsed:.1f}s",
    )


def test_criterion_5_filter_response():
    b, a = design_chebyshev1(FilterSpec(order=6, passband_ripple_db=0.5, cutoff_norm=0.1))
    dc_db = 20 * math.log10(digital_magnitude(b, a, 0.0))
    att_db = -20 * math.log10(digital_magnitude(b, a, 2 * 0.1 * math.pi))
    ok = (-0.5 - 1e-6 <= dc_db <= 1e-6) and att_db >= 50.0
    _report(
        5,
        "6th-order design: DC gain in [-0.5 dB, 0 dB], attenuation at 2x cutoff >= 50 dB",
        ok,
        f"dc={dc_db:.6f} dB, attenuation={att_db:.2f} dB",
    )


def test_criterion_6_end_to_end_affine_invariance():
    db = _build_reference_db()
    runs = _self_runs("wordcount", sorted(FAMILIES).index("wordcount"))
    base = match_application(runs, db)
    base_table = render_table(base)
    base_machine = render_machine(base)
    ok = True
    for factor in (0.5, 2.0, 10.0):
        scaled = [(params, series.scaled(factor)) for params, series in runs]
        report = match_application(scaled, db)
        if render_table(report) != base_table or render_machine(report) != base_machine:
            ok = False
    _report(
        6,
        "scaling raw query traces by 0.5/2/10 leaves the rendered match report byte-identical",
        ok,
    )


def test_criterion_7_round_trips():
    rng = np.random.default_rng(7)
    db_ok = True
    for _ in range(20):
        db = ReferenceDb(
            filter_spec=FilterSpec(
                order=int(rng.integers(1, 9)),
                passband_ripple_db=float(rng.uniform(0.1, 3.0)),
                cutoff_norm=float(rng.uniform(0.02, 0.9)),
                zero_phase=bool(rng.integers(2)),
            ),
            metric=list(UtilizationMetric)[rng.integers(3)],
        )
        for k in range(int(rng.integers(0, 6))):
            params = ConfigParams(*(int(v) for v in rng.integers(1, 60, 4)))
            series = CpuTimeSeries(
                rng.uniform(0, 1, int(rng.integers(2, 64))),
                sample_interval=float(rng.uniform(0.2, 4.0)),
                stage=TraceStage.NORMALIZED,
                source=f"s{k}",
            )
            try:
                db.add(ProfileEntry(f"app{int(rng.integers(4))}", params, series))
            except Exception:
                continue
        import io

        buffer = io.StringIO()
        db.save(buffer)
        loaded = ReferenceDb.load(io.StringIO(buffer.getvalue()))
        if not (
            loaded.filter_spec == db.filter_spec
            and loaded.metric is db.metric
            and loaded.entries == db.entries
        ):
            db_ok = False

    sar_text = (
        "00:19:01 all 46.77 8.46 0.00 0.00 44.78\n"
        "00:22:37 all 1.99 1.49 0.00 0.00 96.52\n"
    )
    busy = parse_sar(sar_text, UtilizationMetric.BUSY_TOTAL)
    usersys = parse_sar(sar_text, UtilizationMetric.USER_PLUS_SYSTEM)
    sar_ok = (
        busy.samples[0] == 55.22
        and busy.samples[1] == 100 - 96.52
        and usersys.samples[0] == 46.77 + 8.46
        and usersys.samples[1] == 3.48
    )
    _report(
        7,
        "database save/load identity on randomized dbs; sar parser reproduces report arithmetic",
        db_ok and sar_ok,
        f"db_ok={db_ok}, sar_ok={sar_ok}",
    )


def test_criterion_8_threshold_monotonicity():
    db = _build_reference_db()
    runs = []
    for app_id in sorted(FAMILIES):
        runs.extend(_self_runs(app_id, sorted(FAMILIES).index(app_id))[:2])
    thresholds = [0.80, 0.85, 0.90, 0.95, 0.99]
    previous = None
    ok = True
    for threshold in thresholds:
        votes = match_application(runs, db, threshold=threshold).votes
        if previous is not None:
            if any(votes[app] > previous[app] for app in votes):
                ok = False
        previous = votes
    _report(
        8,
        "raising the threshold from 0.80 to 0.99 never increases any app's votes",
        ok,
    )
