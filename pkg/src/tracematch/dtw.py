"""Dynamic time warping alignment between two normalized series.

The alignment minimizes the cumulative pointwise cost |x_i - y_j| over all
monotone, contiguous index paths from (1, 1) to (N, M). Besides the
distance, the alignment yields the warp path itself and the reference series
expanded to the query's length by repeating elements along the path, which
is what the downstream correlation score compares against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptySeries
from .trace import CpuTimeSeries, ProfileEntry

#: one step of a warp path: (delta_i, delta_j)
_STEPS = ((1, 1), (1, 0), (0, 1))


def pointwise_distance(x_i: float, y_j: float) -> float:
    """Cost of aligning one query sample with one reference sample."""
    return abs(x_i - y_j)


@dataclass(frozen=True, eq=False)
class AlignmentResult:
    """Outcome of aligning query x (length N) against reference y (length M).

    ``path`` is the minimum-cost warp path as 1-based (i, j) pairs from
    (1, 1) to (N, M). ``expanded_reference`` has length N; position i holds
    y[j] for the last path element with first coordinate i, so it lines up
    sample-for-sample with the query.
    """

    distance: float
    path: tuple[tuple[int, int], ...]
    expanded_reference: CpuTimeSeries = field(repr=False)

    @property
    def path_length(self) -> int:
        return len(self.path)


def is_valid_warp_path(path, n: int, m: int) -> bool:
    """Check the warp-path invariants (used by tests and debugging)."""
    if not path or path[0] != (1, 1) or path[-1] != (n, m):
        return False
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        if (i1 - i0, j1 - j0) not in _STEPS:
            return False
    return True


def _suffix_cost_matrix(xs: list[float], ys: list[float]) -> list[list[float]]:
    """R[i][j] = minimum cumulative cost of a path from (i, j) to the end.

    This is the standard cumulative-cost recursion run from the far corner;
    R[0][0] equals the classic D(N, M) and the matrix lets the path be read
    off forward from (0, 0), which is what keeps tie-breaking deterministic
    (see dtw_align).
    """
    n, m = len(xs), len(ys)
    R = [[0.0] * m for _ in range(n)]
    last = R[n - 1]
    xl = xs[n - 1]
    last[m - 1] = abs(xl - ys[m - 1])
    for j in range(m - 2, -1, -1):
        last[j] = last[j + 1] + abs(xl - ys[j])
    for i in range(n - 2, -1, -1):
        row, below = R[i], R[i + 1]
        xi = xs[i]
        row[m - 1] = below[m - 1] + abs(xi - ys[m - 1])
        for j in range(m - 2, -1, -1):
            best = below[j + 1]
            if below[j] < best:
                best = below[j]
            if row[j + 1] < best:
                best = row[j + 1]
            row[j] = best + abs(xi - ys[j])
    return R


def dtw_align(x: CpuTimeSeries, y: CpuTimeSeries) -> AlignmentResult:
    """Align query ``x`` against reference ``y``.

    Roles are fixed: x is the query and its length defines the expanded
    reference's length; no internal swapping happens regardless of which
    series is longer (the distance itself is symmetric).

    When several warp paths share the minimum cost, the returned path takes
    the diagonal step as early as possible, then the vertical (i+1, j), then
    the horizontal (i, j+1). That makes the expanded reference — and hence
    the similarity score — deterministic.
    """
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise EmptySeries(
            f"cannot align empty series (query {n} samples from {x.source!r}, "
            f"reference {m} samples from {y.source!r})"
        )
    xs = x.samples.tolist()
    ys = y.samples.tolist()
    R = _suffix_cost_matrix(xs, ys)

    path = [(0, 0)]
    i = j = 0
    while i < n - 1 or j < m - 1:
        if i == n - 1:
            j += 1
        elif j == m - 1:
            i += 1
        else:
            best = R[i + 1][j + 1]
            ni, nj = i + 1, j + 1
            if R[i + 1][j] < best:
                best = R[i + 1][j]
                ni, nj = i + 1, j
            if R[i][j + 1] < best:
                ni, nj = i, j + 1
            i, j = ni, nj
        path.append((i, j))

    last_j = [0] * n
    for pi, pj in path:
        last_j[pi] = pj
    expanded = y.samples[last_j]
    expanded_series = CpuTimeSeries(
        expanded,
        sample_interval=x.sample_interval,
        stage=y.stage,
        source=y.source,
    )
    return AlignmentResult(
        distance=R[0][0],
        path=tuple((pi + 1, pj + 1) for pi, pj in path),
        expanded_reference=expanded_series,
    )


def dtw_distance_matrix(
    queries: list[ProfileEntry], references: list[ProfileEntry]
) -> list[list[AlignmentResult]]:
    """Pairwise alignments of every query entry against every reference entry.

    Element [q][r] equals ``dtw_align(queries[q].series, references[r].series)``;
    the result is identical to sequential evaluation in any order.
    """
    matrix = []
    for query in queries:
        row = []
        for reference in references:
            try:
                row.append(dtw_align(query.series, reference.series))
            except EmptySeries as exc:
                exc.context = (query.app_id, query.params)
                raise
        matrix.append(row)
    return matrix
