"""Convex polyominoes by gluing growth-phase blocks.

Reading columns left to right, the upper profile moves through phases
0 (growing), 1 (oscillating), 2 (shrinking), and so does the lower profile.
``C_ij`` counts convex polyominoes whose last column is in phase ``(i, j)``,
with ``v`` marking the size of that column.  A polyomino ending in phase
``dst`` is either a single ``dst`` block (only for ``dst = (0, 0)``, whose
block includes the one-column polyominoes) or a polyomino ending in an
earlier phase ``src`` followed by one ``dst`` block.  The junction column
pair determines the number of shared edges, which is removed from ``t``.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

from .phase_blocks import all_blocks
from .series_core import (
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    mul,
    mono,
    shift_monomial,
    split_by,
    sum_series,
)

State = tuple[int, int]
STATES: tuple[State, ...] = tuple(product((0, 1, 2), repeat=2))


def next_phase(state: int, move: int) -> int | None:
    """Phase after a profile move of ``move`` half-cells, or None if forbidden."""
    if state == 0:
        if move >= 1:
            return 0
        return 1 if move == -1 else 2
    if state == 1:
        if move in (1, -1):
            return 1
        return 2 if move <= -3 else None
    return 2 if move <= -1 else None


def _odd_count(lo: int, hi: int) -> int:
    return (hi - lo) // 2 + 1 if hi >= lo else 0


def shared_edges(k: int, n: int, b: int) -> int:
    """Edges between a column of k cells at [0, 2k-2] and one of n cells from b."""
    top_old, top_new = 2 * k - 2, b + 2 * n - 2
    # a new cell at y touches old cells at y - 1 and y + 1
    return _odd_count(max(b, -1), min(top_new, top_old - 1)) + _odd_count(max(b, 1), min(top_new, top_old + 1))


def junction_moves(src: State, dst: State, k: int, n: int) -> list[int]:
    """Bottom shifts b of every legal junction from a k-column to an n-column."""
    out = []
    # top must reach the old bottom - 1, bottom must stay below the old top + 1
    for b in range(1 - 2 * n, 2 * k, 2):
        a = b + 2 * (n - k)
        if (next_phase(src[0], a), next_phase(src[1], -b)) == dst:
            out.append(b)
    return out


def _glue(prefix: TruncatedSeries, block: TruncatedSeries, src: State, dst: State) -> TruncatedSeries:
    bq, bt = prefix.bound_q, prefix.bound_t
    heads = split_by(prefix, "v")  # last column of the prefix
    tails = split_by(block, "u")  # first column of the block
    parts = []
    for n, tail in tails.items():
        if n == 0:
            raise SeriesError("block without a first-column marker")
        by_edges: dict[int, list[TruncatedSeries]] = defaultdict(list)
        for k, head in heads.items():
            for b in junction_moves(src, dst, k, n):
                by_edges[shared_edges(k, n, b)].append(head)
        for e, heads_e in by_edges.items():
            joined = shift_monomial(sum_series(heads_e, bq, bt), mono(t=-e))
            parts.append(mul(joined, tail))
    return sum_series(parts, bq, bt).with_bounds(bq, bt)


def reachable(src: State, dst: State) -> bool:
    return src != dst and src[0] <= dst[0] and src[1] <= dst[1]


def phase_series(req: SeriesRequest) -> dict[State, TruncatedSeries]:
    """Every ``C_ij``, with ``v`` marking the last column when active."""
    if "t" not in req.active:
        raise SeriesError("convex series need t; set bound_t = 2 * bound_q + 1 for area counts")
    inner = req.with_active(req.active | {"u", "v"})
    blocks = all_blocks(inner)
    # H_00 carries no first-column marker and only ever starts a polyomino.
    out: dict[State, TruncatedSeries] = {(0, 0): blocks[(0, 0)]}
    for dst in STATES[1:]:
        parts = [_glue(out[src], blocks[dst], src, dst) for src in STATES if src in out and reachable(src, dst)]
        out[dst] = sum_series(parts, req.bound_q, req.bound_t)
    return {s: req.restrict(f) for s, f in out.items()}


def convex_series(req: SeriesRequest) -> TruncatedSeries:
    """All convex polyominoes: the sum of every ``C_ij`` with ``v`` at 1."""
    phases = phase_series(req.with_active(req.active - {"u", "v"}))
    return sum_series(phases.values(), req.bound_q, req.bound_t)
