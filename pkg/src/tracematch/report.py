"""Deterministic renderings of a match report.

Two formats: a human-readable grid of applications x configurations with
similarity percentages at four decimal places, and a line-oriented
``key=value`` machine format whose layout is frozen by golden tests.
"""

from __future__ import annotations

from .workflow import MatchReport

MACHINE_FORMAT_TAG = "tracematch.match.v1"


def render_table(report: MatchReport) -> str:
    """Applications as rows, query configurations as columns.

    Cells are correlation percentages (4 decimals); the per-configuration
    winner is starred; '-' marks an application with no entry at that
    configuration.
    """
    apps = sorted(report.votes)
    columns = [c.params.label() for c in report.per_config]
    grid = []
    for app in apps:
        row = []
        for config in report.per_config:
            by_app = {s.app_id: s.corr for s in config.scores}
            if app not in by_app:
                row.append("-")
            else:
                cell = f"{100.0 * by_app[app]:.4f}"
                if config.winner == app:
                    cell += "*"
                row.append(cell)
        grid.append(row)

    name_w = max([len(a) for a in apps] + [len("application")])
    col_ws = [
        max([len(col)] + [len(grid[r][c]) for r in range(len(apps))])
        for c, col in enumerate(columns)
    ]
    lines = [f"Match report (threshold {report.threshold:g})", ""]
    header = "application".ljust(name_w) + "  " + "  ".join(
        col.rjust(w) for col, w in zip(columns, col_ws)
    )
    lines.append(header.rstrip())
    lines.append("-" * len(header))
    for app, row in zip(apps, grid):
        lines.append(
            (
                app.ljust(name_w)
                + "  "
                + "  ".join(cell.rjust(w) for cell, w in zip(row, col_ws))
            ).rstrip()
        )
    lines.append("")
    lines.append(
        "votes: "
        + (
            ", ".join(f"{app}={report.votes[app]}" for app in apps)
            if apps
            else "(none)"
        )
    )
    if report.verdict is None:
        lines.append("verdict: none (no application met the threshold)")
    else:
        lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def render_machine(report: MatchReport) -> str:
    """Line-oriented key=value records; empty value means absent."""
    lines = [
        f"format={MACHINE_FORMAT_TAG}",
        f"threshold={report.threshold:.6f}",
        f"configs={len(report.per_config)}",
    ]
    for idx, config in enumerate(report.per_config):
        p = config.params
        lines.append(
            f"config.{idx}.params={p.mappers},{p.reducers},{p.fs_split_mb},{p.input_mb}"
        )
        lines.append(f"config.{idx}.scores={len(config.scores)}")
        for sidx, app_score in enumerate(config.scores):
            lines.append(f"config.{idx}.score.{sidx}.app={app_score.app_id}")
            lines.append(f"config.{idx}.score.{sidx}.corr={app_score.corr:.6f}")
        lines.append(f"config.{idx}.winner={config.winner or ''}")
    for app in sorted(report.votes):
        lines.append(f"votes.{app}={report.votes[app]}")
    lines.append(f"verdict={report.verdict or ''}")
    return "\n".join(lines) + "\n"


def render(report: MatchReport, fmt: str = "table") -> str:
    if fmt == "table":
        return render_table(report)
    if fmt == "machine":
        return render_machine(report)
    raise ValueError(f"unknown report format {fmt!r}")
