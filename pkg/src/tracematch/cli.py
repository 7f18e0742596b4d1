"""Command-line surface: profile, match, compare, synth, db.

Exit codes: 0 success, 1 usage error, 2 data or pipeline error. Usage
failures print to stderr via argparse; pipeline failures print one
``error: ...`` line naming the offending input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import TraceMatchError
from .ingest import UtilizationMetric, parse_file
from .preprocess import FilterSpec
from .refdb import ReferenceDb
from .report import render
from .synth import SynthSpec, WorkloadFamily, generate
from .trace import ConfigParams
from .workflow import compare_pair, match_application, profile_application

_METRICS = {m.value: m for m in UtilizationMetric}
_FAMILIES = {f.value: f for f in WorkloadFamily}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_filter_flags(parser, with_defaults: bool):
    # profile/match leave these unset so the database header can win
    d = (lambda v: v) if with_defaults else (lambda v: None)
    parser.add_argument(
        "--order", type=int, default=d(6), help="filter order (default 6)"
    )
    parser.add_argument(
        "--ripple-db",
        type=float,
        default=d(0.5),
        help="passband ripple in dB (default 0.5)",
    )
    parser.add_argument(
        "--cutoff",
        type=float,
        default=d(0.1),
        help="cutoff as a fraction of Nyquist (default 0.1)",
    )
    parser.add_argument(
        "--no-zero-phase",
        dest="zero_phase",
        action="store_const",
        const=False,
        default=d(True),
        help="single causal pass instead of forward-backward filtering",
    )


def _add_run_flags(parser):
    parser.add_argument(
        "--run",
        nargs=5,
        action="append",
        metavar=("FILE", "M", "R", "FS", "I"),
        default=[],
        help="a trace file plus its mappers/reducers/split-MB/input-MB",
    )
    parser.add_argument(
        "--manifest",
        type=Path,
        help="file with one 'path M R FS I' line per run; wins over --run on conflict",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tracematch",
        description="Fingerprint CPU-utilization traces and match them "
        "against a reference database of profiled applications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "profile", parents=[], help="preprocess captured runs into a database"
    )
    p.add_argument("--db", type=Path, required=True, help="database file to create or extend")
    p.add_argument("--app", required=True, help="application id of these runs")
    p.add_argument(
        "--metric",
        choices=sorted(_METRICS),
        default=None,
        help="utilization metric for sar parsing (default busy = 100 - idle)",
    )
    _add_run_flags(p)
    _add_filter_flags(p, with_defaults=False)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("match", help="match query runs against a database")
    p.add_argument("--db", type=Path, required=True, help="database file to match against")
    p.add_argument(
        "--threshold",
        type=float,
        default=0.9,
        help="minimum correlation for an acceptable match (default 0.9)",
    )
    p.add_argument(
        "--format",
        choices=("table", "machine"),
        default="table",
        help="report format (default table)",
    )
    p.add_argument("--metric", choices=sorted(_METRICS), default=None)
    _add_run_flags(p)
    _add_filter_flags(p, with_defaults=False)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("compare", help="full pipeline on exactly two traces")
    p.add_argument("file_a", type=Path)
    p.add_argument("file_b", type=Path)
    p.add_argument(
        "--metric",
        choices=sorted(_METRICS),
        default="busy",
        help="utilization metric for sar parsing (default busy)",
    )
    _add_filter_flags(p, with_defaults=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("synth", help="generate a synthetic trace as CSV")
    p.add_argument(
        "--family",
        choices=sorted(_FAMILIES),
        required=True,
        help="workload shape archetype",
    )
    p.add_argument(
        "--duration",
        type=int,
        default=120,
        help="trace length in seconds, at least 60 (default 120)",
    )
    p.add_argument(
        "--noise",
        type=float,
        default=5.0,
        help="uniform noise amplitude in percent points, 0..50 (default 5)",
    )
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--mappers", type=int, default=11)
    p.add_argument("--reducers", type=int, default=6)
    p.add_argument("--fs-split", type=int, default=20, help="split size in MB")
    p.add_argument("--input-mb", type=int, default=30, help="input size in MB")
    p.add_argument("-o", "--out", type=Path, required=True, help="output CSV path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("db", help="inspect a database file")
    p.add_argument("--db", type=Path, required=True)
    p.set_defaults(func=cmd_db)

    return parser


def _collect_runs(args, parser) -> list[tuple[ConfigParams, Path]]:
    """Merge --run flags and the manifest; manifest wins on duplicate paths."""
    runs: dict[Path, ConfigParams] = {}
    order: list[Path] = []

    def put(path: Path, params: ConfigParams):
        if path not in runs:
            order.append(path)
        runs[path] = params

    for file, m, r, fs, i in args.run:
        try:
            params = ConfigParams(int(m), int(r), int(fs), int(i))
        except (ValueError, TraceMatchError):
            parser.error(f"--run {file}: M R FS I must be positive integers")
        put(Path(file), params)
    if args.manifest is not None:
        try:
            text = args.manifest.read_text(encoding="utf-8")
        except OSError as exc:
            raise TraceMatchError(f"cannot read manifest: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.replace(",", " ").split()
            if len(fields) != 5:
                raise TraceMatchError(
                    f"manifest line {lineno}: expected 'path M R FS I', got {line!r}"
                )
            try:
                params = ConfigParams(*(int(v) for v in fields[1:]))
            except (ValueError, TraceMatchError) as exc:
                raise TraceMatchError(f"manifest line {lineno}: {exc}") from exc
            put(Path(fields[0]), params)
    if not runs:
        parser.error("no input runs: pass --run or --manifest")
    return [(runs[path], path) for path in order]


def _filter_spec_from_args(args) -> FilterSpec | None:
    values = (args.order, args.ripple_db, args.cutoff, args.zero_phase)
    if all(v is None for v in values):
        return None
    return FilterSpec(
        order=args.order if args.order is not None else 6,
        passband_ripple_db=args.ripple_db if args.ripple_db is not None else 0.5,
        cutoff_norm=args.cutoff if args.cutoff is not None else 0.1,
        zero_phase=args.zero_phase if args.zero_phase is not None else True,
    )


def _load_runs(run_paths, metric: UtilizationMetric):
    loaded = []
    for params, path in run_paths:
        try:
            series = parse_file(path, metric=metric)
        except OSError as exc:
            raise TraceMatchError(f"cannot read trace {path}: {exc}") from exc
        loaded.append((params, series))
    return loaded


def cmd_profile(args, parser) -> int:
    run_paths = _collect_runs(args, parser)
    requested_spec = _filter_spec_from_args(args)
    requested_metric = _METRICS[args.metric] if args.metric else None
    if args.db.exists():
        db = ReferenceDb.load(args.db)
        if requested_spec is not None and requested_spec != db.filter_spec:
            raise TraceMatchError(
                f"filter flags differ from existing database settings "
                f"{db.filter_spec}; drop the flags or rebuild the database"
            )
        if requested_metric is not None and requested_metric is not db.metric:
            raise TraceMatchError(
                f"--metric {requested_metric.value} differs from existing "
                f"database metric {db.metric.value}"
            )
    else:
        db = ReferenceDb(
            filter_spec=requested_spec or FilterSpec(),
            metric=requested_metric or UtilizationMetric.BUSY_TOTAL,
        )
    runs = _load_runs(run_paths, db.metric)
    profile_application(args.app, runs, db)
    db.save(args.db)
    print(
        f"profiled {len(runs)} run(s) of {args.app!r}; "
        f"database {args.db} now holds {len(db)} entrie(s)"
    )
    return 0


def cmd_match(args, parser) -> int:
    run_paths = _collect_runs(args, parser)
    db = ReferenceDb.load(args.db)
    requested_spec = _filter_spec_from_args(args)
    requested_metric = _METRICS[args.metric] if args.metric else None
    runs = _load_runs(run_paths, requested_metric or db.metric)
    report = match_application(
        runs,
        db,
        threshold=args.threshold,
        filter_spec=requested_spec,
        metric=requested_metric,
    )
    sys.stdout.write(render(report, args.format))
    return 0


def cmd_compare(args, parser) -> int:
    spec = _filter_spec_from_args(args)
    metric = _METRICS[args.metric]
    series = []
    for path in (args.file_a, args.file_b):
        try:
            series.append(parse_file(path, metric=metric))
        except OSError as exc:
            raise TraceMatchError(f"cannot read trace {path}: {exc}") from exc
    result = compare_pair(series[0], series[1], spec)
    print(
        f"# compare: metric={metric.value} order={spec.order} "
        f"ripple_db={spec.passband_ripple_db:g} cutoff={spec.cutoff_norm:g} "
        f"zero_phase={str(spec.zero_phase).lower()}"
    )
    print(f"distance={result.distance:.6f}")
    print(f"corr={result.corr:.6f}")
    print(f"path_length={result.path_length}")
    return 0


def cmd_synth(args, parser) -> int:
    if args.duration < 60:
        parser.error("--duration must be at least 60 seconds")
    if not 0 <= args.noise <= 50:
        parser.error("--noise must lie in [0, 50]")
    try:
        params = ConfigParams(args.mappers, args.reducers, args.fs_split, args.input_mb)
        spec = SynthSpec(
            params=params,
            family=_FAMILIES[args.family],
            duration_s=args.duration,
            noise_amplitude=args.noise,
            seed=args.seed,
        )
    except TraceMatchError as exc:
        parser.error(str(exc))
    series = generate(spec)
    text = "\n".join(repr(v) for v in series.samples.tolist()) + "\n"
    try:
        args.out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise TraceMatchError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {len(series)} samples to {args.out}")
    return 0


def cmd_db(args, parser) -> int:
    db = ReferenceDb.load(args.db)
    spec = db.filter_spec
    print(f"database: {args.db}")
    print(f"format_version: {db.format_version}")
    print(f"metric: {db.metric.value}")
    print(
        f"filter: order={spec.order} ripple_db={spec.passband_ripple_db:g} "
        f"cutoff={spec.cutoff_norm:g} zero_phase={str(spec.zero_phase).lower()}"
    )
    print(f"entries: {len(db)}")
    for entry in db.entries:
        print(f"  {entry.app_id}  {entry.params.label()}  {len(entry.series)} samples")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser)
    except SystemExit as exc:  # parser.error inside a command
        return int(exc.code or 0)
    except (TraceMatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
