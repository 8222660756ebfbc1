"""Exhaustive generation of convex hexagonal polyominoes.

This is the ground truth the generating functions are checked against.  It
shares no code with the series modules.

Generation is column driven.  A polyomino is a sequence of vertical column
segments; a column at index ``col`` holds cells whose doubled height ``y``
has the parity of ``col`` (cell ``(col, y)`` has neighbours ``(col, y +- 2)``
and ``(col +- 1, y +- 1)``).  Each prefix of a convex polyomino is convex, so
columns are appended depth first and every prefix is tested directly for
contiguity along the two diagonal directions.  The first column always
starts at ``y = 0``, which picks one representative per translation class.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .group_d6 import ELEMENTS, LATTICE, ELEMENT_NAMES

Column = tuple[int, int]  # (bottom y, top y) of the cell centres, same parity as col


@dataclass(frozen=True)
class Polyomino:
    """A convex polyomino given by its column segments (first column at y=0)."""

    columns: tuple[Column, ...]

    @property
    def area(self) -> int:
        return sum((top - bot) // 2 + 1 for bot, top in self.columns)

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def column_sizes(self) -> tuple[int, ...]:
        return tuple((top - bot) // 2 + 1 for bot, top in self.columns)

    def cells(self) -> list[tuple[int, int]]:
        """Cells as ``(col, y)`` pairs."""
        return [(col, y) for col, (bot, top) in enumerate(self.columns) for y in range(bot, top + 1, 2)]

    def cube_cells(self) -> list[tuple[int, int, int]]:
        out = []
        for col, y in self.cells():
            c = (y - col) // 2
            out.append((col, -col - c, c))
        return out

    @property
    def half_perimeter(self) -> int:
        return half_perimeter(self)

    def dump_line(self) -> str:
        """Cells as sorted ``a,c`` pairs of cube coordinates."""
        return " ".join(f"{a},{c}" for a, c in canonical_form(self.cube_cells()))


def column_contacts(prev: Column, new: Column) -> int:
    """Number of adjacent cell pairs between two neighbouring columns."""
    pb, pt = prev
    nb, nt = new
    count = 0
    for y in range(nb, nt + 1, 2):
        if pb <= y - 1 <= pt:
            count += 1
        if pb <= y + 1 <= pt:
            count += 1
    return count


def half_perimeter(p: Polyomino) -> int:
    """Half the boundary edge count: ``3 * area - adjacent pairs``."""
    adj = sum(n - 1 for n in p.column_sizes)
    adj += sum(column_contacts(a, b) for a, b in zip(p.columns, p.columns[1:]))
    return 3 * p.area - adj


def perimeter(p: Polyomino) -> int:
    return 2 * half_perimeter(p)


def half_perimeter_of_cells(cells: set[tuple[int, int]]) -> int:
    """Independent half-perimeter for an arbitrary cell set in ``(col, y)``."""
    adj = 0
    for col, y in cells:
        for dc, dy in ((0, 2), (1, 1), (1, -1)):
            if (col + dc, y + dy) in cells:
                adj += 1
    return 3 * len(cells) - adj


# -- phase annotation ------------------------------------------------------


def _next_phase(state: int, move: int) -> int:
    """Upper-profile phase after a move of ``move`` half-cells (odd)."""
    if state == 0:
        if move >= 1:
            return 0
        return 1 if move == -1 else 2
    if state == 1:
        if move in (1, -1):
            return 1
        if move <= -3:
            return 2
        raise ValueError("strong growth during oscillation")
    if move <= -1:
        return 2
    raise ValueError("growth during decrease")


def phase_states(p: Polyomino) -> list[tuple[int, int]]:
    """Per-column ``(upper, lower)`` growth phase; the first column is (0, 0)."""
    states = [(0, 0)]
    for (pb, pt), (nb, nt) in zip(p.columns, p.columns[1:]):
        up, low = states[-1]
        states.append((_next_phase(up, nt - pt), _next_phase(low, pb - nb)))
    return states


# -- generation -----------------------------------------------------------

MoveFilter = Callable[[int, int], bool]


def _extend(
    columns: list[Column],
    diag_up: dict[int, int],
    diag_down: dict[int, int],
    area: int,
    hp: int,
    max_area: int,
    max_hp: int,
    move_filter: MoveFilter | None,
    out: list[tuple[Column, ...]],
) -> None:
    out.append(tuple(columns))
    col = len(columns)
    pb, pt = columns[-1]
    room = max_area - area
    if room <= 0:
        return
    # new column must touch the previous one: nb <= pt + 1 and nt >= pb - 1
    for nb in range(pb - 1 - 2 * (room - 1), pt + 2, 2):
        for nt in range(max(nb, pb - 1), nb + 2 * room - 1, 2):
            size = (nt - nb) // 2 + 1
            if move_filter is not None and not move_filter(nt - pt, nb - pb):
                continue
            new_hp = hp + 2 * size + 1 - column_contacts((pb, pt), (nb, nt))
            if new_hp > max_hp:
                continue
            if not _diagonals_ok(col, nb, nt, diag_up, diag_down):
                continue
            saved = []
            for y in range(nb, nt + 1, 2):
                saved.append((y - col, diag_up.get(y - col), y + col, diag_down.get(y + col)))
                diag_up[y - col] = col
                diag_down[y + col] = col
            columns.append((nb, nt))
            _extend(columns, diag_up, diag_down, area + size, new_hp, max_area, max_hp, move_filter, out)
            columns.pop()
            for du, old_u, dd, old_d in reversed(saved):
                _restore(diag_up, du, old_u)
                _restore(diag_down, dd, old_d)


def _restore(d: dict[int, int], key: int, old: int | None) -> None:
    if old is None:
        d.pop(key, None)
    else:
        d[key] = old


def _diagonals_ok(col: int, nb: int, nt: int, diag_up: dict[int, int], diag_down: dict[int, int]) -> bool:
    """A diagonal met by the new column must be new or met by the previous column."""
    for y in range(nb, nt + 1, 2):
        last = diag_up.get(y - col)
        if last is not None and last != col - 1:
            return False
        last = diag_down.get(y + col)
        if last is not None and last != col - 1:
            return False
    return True


def _grow_from(first_size: int, max_area: int, max_hp: int, move_filter: MoveFilter | None) -> list[tuple[Column, ...]]:
    top = 2 * (first_size - 1)
    hp = 2 * first_size + 1
    if first_size > max_area or hp > max_hp:
        return []
    diag_up = {y: 0 for y in range(0, top + 1, 2)}
    diag_down = dict(diag_up)
    out: list[tuple[Column, ...]] = []
    _extend([(0, top)], diag_up, diag_down, first_size, hp, max_area, max_hp, move_filter, out)
    return out


def _partition_job(args) -> list[tuple[Column, ...]]:
    first_size, max_area, max_hp = args
    return _grow_from(first_size, max_area, max_hp, None)


def enumerate_convex(
    max_area: int,
    max_hp: int | None = None,
    *,
    threads: int = 1,
    move_filter: MoveFilter | None = None,
) -> Iterator[Polyomino]:
    """Every convex polyomino with area <= max_area (and half-perimeter <= max_hp).

    Output order is deterministic (by first-column size, then depth-first)
    whatever the number of worker processes.
    """
    if max_area < 1:
        raise ValueError("max_area must be >= 1")
    if max_hp is None:
        max_hp = 2 * max_area + 1
    sizes = list(range(1, max_area + 1))
    if threads > 1 and move_filter is None:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_partition_job, [(n, max_area, max_hp) for n in sizes]))
    else:
        chunks = [_grow_from(n, max_area, max_hp, move_filter) for n in sizes]
    for chunk in chunks:
        for cols in chunk:
            yield Polyomino(cols)


# -- naive reference generator ----------------------------------------------

_NEIGHBOURS = ((0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1))


def _normalize(cells) -> frozenset[tuple[int, int]]:
    c0 = min(c for c, _ in cells)
    y0 = min(y for c, y in cells if c == c0)
    return frozenset((c - c0, y - y0) for c, y in cells)


def enumerate_all_fixed(max_area: int) -> dict[int, set[frozenset[tuple[int, int]]]]:
    """All fixed polyhexes (not necessarily convex) by cell-at-a-time growth."""
    levels = {1: {frozenset({(0, 0)})}}
    for n in range(2, max_area + 1):
        nxt = set()
        for poly in levels[n - 1]:
            for c, y in poly:
                for dc, dy in _NEIGHBOURS:
                    cell = (c + dc, y + dy)
                    if cell not in poly:
                        nxt.add(_normalize(poly | {cell}))
        levels[n] = nxt
    return levels


def is_convex_cells(cells: frozenset[tuple[int, int]]) -> bool:
    """Direct check: every line of cell centres in the three directions meets the set in a run."""
    lines: dict[tuple[int, int], list[int]] = {}
    for col, y in cells:
        lines.setdefault((0, col), []).append(y)  # vertical
        lines.setdefault((1, y - col), []).append(col)  # up-right diagonal
        lines.setdefault((2, y + col), []).append(col)  # down-right diagonal
    for (kind, _), vals in lines.items():
        step = 2 if kind == 0 else 1
        if (max(vals) - min(vals)) // step + 1 != len(vals):
            return False
    return True


def naive_convex_counts(max_area: int) -> Counter:
    """Convex fixed polyhexes by area, via the naive generator and a filter."""
    counts: Counter = Counter()
    for n, polys in enumerate_all_fixed(max_area).items():
        counts[n] = sum(1 for p in polys if is_convex_cells(p))
    return counts


# -- symmetry ---------------------------------------------------------------


def canonical_form(cube_cells) -> tuple[tuple[int, int], ...]:
    """Sorted ``(a, c)`` pairs translated so the lexicographic minimum is (0, 0)."""
    pairs = sorted((a, c) for a, _, c in cube_cells)
    a0, c0 = pairs[0]
    return tuple((a - a0, c - c0) for a, c in pairs)


def _line_profiles(cube_cells) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    profiles = []
    for i in range(3):
        cnt = Counter(cell[i] for cell in cube_cells)
        profiles.append(tuple(cnt[k] for k in sorted(cnt)))
    return tuple(profiles)  # type: ignore[return-value]


@dataclass
class StabilizerRecord:
    polyomino: Polyomino
    elements: frozenset[str]
    label: str
    phase_states: list[tuple[int, int]] = field(default_factory=list)


def stabilizer_elements(p: Polyomino) -> frozenset[str]:
    cells = p.cube_cells()
    profiles = _line_profiles(cells)
    canon = None
    fixed = {"id"}
    for name in ELEMENT_NAMES:
        if name == "id":
            continue
        g = ELEMENTS[name]
        # g maps lines of constant coordinate perm[i] onto lines of constant coordinate i
        ok = True
        for i in range(3):
            src = profiles[g.perm[i]]
            if g.sign < 0:
                src = src[::-1]
            if src != profiles[i]:
                ok = False
                break
        if not ok:
            continue
        if canon is None:
            canon = canonical_form(cells)
        if canonical_form([g.apply(c) for c in cells]) == canon:
            fixed.add(name)
    return frozenset(fixed)


def stabilizer(p: Polyomino) -> StabilizerRecord:
    els = stabilizer_elements(p)
    return StabilizerRecord(p, els, LATTICE.label_of(els), phase_states(p))


def free_canonical(p: Polyomino) -> tuple[tuple[int, int], ...]:
    """Canonical representative of the D6 orbit (minimum over the 12 images)."""
    cells = p.cube_cells()
    return min(canonical_form([g.apply(c) for c in cells]) for g in ELEMENTS.values())


# -- census -------------------------------------------------------------------


@dataclass
class Census:
    """Counts gathered in one pass over the enumeration.

    ``fix[stat][g]`` and ``stab[stat][label]`` are Counters keyed by the
    statistic value (area or half-perimeter).
    """

    max_area: int
    max_hp: int
    fix: dict[str, dict[str, Counter]]
    stab: dict[str, dict[str, Counter]]
    joint_fix: dict[str, Counter]
    joint_stab: dict[str, Counter]
    last_state: dict[tuple[int, int], Counter]
    total: dict[str, Counter]


def _census_job(args):
    first_size, max_area, max_hp = args
    fix = {s: {g: Counter() for g in ELEMENT_NAMES} for s in ("area", "hp")}
    stab = {s: {label: Counter() for label in LATTICE.subgroups} for s in ("area", "hp")}
    joint_fix = {g: Counter() for g in ELEMENT_NAMES}
    joint_stab = {label: Counter() for label in LATTICE.subgroups}
    last_state = {}
    for cols in _grow_from(first_size, max_area, max_hp, None):
        p = Polyomino(cols)
        area = p.area
        hp = half_perimeter(p)
        els = stabilizer_elements(p)
        label = LATTICE.label_of(els)
        stats = {"area": area, "hp": hp}
        for s, val in stats.items():
            for g in els:
                fix[s][g][val] += 1
            stab[s][label][val] += 1
        for g in els:
            joint_fix[g][(area, hp)] += 1
        joint_stab[label][(area, hp)] += 1
        state = phase_states(p)[-1]
        last_state.setdefault(state, Counter())[(area, hp)] += 1
    return fix, stab, joint_fix, joint_stab, last_state


def oracle_census(max_area: int, max_hp: int | None = None, threads: int | None = None) -> Census:
    """Fix counts per group element, stabilizer counts, and last-column states."""
    if max_area < 1:
        raise ValueError("max_area must be >= 1")
    if max_hp is None:
        max_hp = 2 * max_area + 1
    if threads is None:
        threads = int(os.environ.get("HEXCONVEX_THREADS", "1"))
    jobs = [(n, max_area, max_hp) for n in range(1, max_area + 1)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_census_job, jobs))
    else:
        parts = [_census_job(j) for j in jobs]
    fix = {s: {g: Counter() for g in ELEMENT_NAMES} for s in ("area", "hp")}
    stab = {s: {label: Counter() for label in LATTICE.subgroups} for s in ("area", "hp")}
    joint_fix = {g: Counter() for g in ELEMENT_NAMES}
    joint_stab = {label: Counter() for label in LATTICE.subgroups}
    last_state: dict[tuple[int, int], Counter] = {}
    for f, st, jf, js, ls in parts:
        for s in fix:
            for g in ELEMENT_NAMES:
                fix[s][g].update(f[s][g])
            for label in LATTICE.subgroups:
                stab[s][label].update(st[s][label])
        for g in ELEMENT_NAMES:
            joint_fix[g].update(jf[g])
        for label in LATTICE.subgroups:
            joint_stab[label].update(js[label])
        for state, cnt in ls.items():
            last_state.setdefault(state, Counter()).update(cnt)
    total = {s: fix[s]["id"] for s in fix}
    return Census(max_area, max_hp, fix, stab, joint_fix, joint_stab, last_state, total)


# -- sub-families -------------------------------------------------------------

# Moves (a, b) = (top shift, bottom shift) allowed inside a block that stays
# in growth phase (upper, lower) from its first column on.
BLOCK_MOVES: dict[tuple[int, int], MoveFilter] = {
    (0, 0): lambda a, b: a >= 1 and b <= -1,
    (1, 0): lambda a, b: a in (1, -1) and b <= -1,
    (0, 1): lambda a, b: a >= 1 and b in (1, -1),
    (1, 1): lambda a, b: a in (1, -1) and b in (1, -1),
    (2, 0): lambda a, b: a <= -1 and b <= -1,
    (0, 2): lambda a, b: a >= 1 and b >= 1,
    (2, 1): lambda a, b: a <= -1 and b in (1, -1),
    (1, 2): lambda a, b: a in (1, -1) and b >= 1,
    (2, 2): lambda a, b: a <= -1 and b >= 1,
}


def weight_counts(
    max_area: int,
    max_hp: int | None = None,
    move_filter: MoveFilter | None = None,
    keep: Callable[[Polyomino], bool] | None = None,
) -> Counter:
    """Counter keyed by ``(columns, area, first size, last size, half-perimeter)``."""
    out: Counter = Counter()
    for p in enumerate_convex(max_area, max_hp, move_filter=move_filter):
        if keep is not None and not keep(p):
            continue
        sizes = p.column_sizes
        out[(p.width, p.area, sizes[0], sizes[-1], half_perimeter(p))] += 1
    return out


def at_least(census: Census, label: str) -> Counter:
    """Joint (area, half-perimeter) counts of polyominoes whose stabilizer contains ``label``."""
    out: Counter = Counter()
    for k in LATTICE.upper_set(label):
        out.update(census.joint_stab[k])
    return out


def directed_counts(max_area: int, max_hp: int | None = None) -> dict[int, Counter]:
    """Directed convex polyominoes (every column one half-cell above the last),
    keyed by the final upper-profile phase, each a Counter over
    ``(columns, area, last size, half-perimeter)``.
    """
    out: dict[int, Counter] = {0: Counter(), 1: Counter(), 2: Counter()}
    for p in enumerate_convex(max_area, max_hp, move_filter=lambda a, b: b == 1):
        phase = 0
        for (_, pt), (_, nt) in zip(p.columns, p.columns[1:]):
            phase = _next_phase(phase, nt - pt)
        out[phase][(p.width, p.area, p.column_sizes[-1], half_perimeter(p))] += 1
    return out


# -- tables -----------------------------------------------------------------

_STAT_KEY = {"area": "area", "half-perimeter": "hp"}


def oracle_table_rows(census: Census, statistic: str, first: int, last: int) -> list[tuple[int, ...]]:
    """Rows ``(stat, id, h, v, r, r2, r3, orbits, D6, F31, H31, D2, asym)``.

    Orbits come from orbit-stabilizer (each polyomino weighs ``|Stab|/12``),
    not from Burnside, so the two computations check each other.
    """
    key = _STAT_KEY[statistic]
    fix, stab = census.fix[key], census.stab[key]

    def at_least(label: str, value: int) -> int:
        return sum(stab[k][value] for k in LATTICE.upper_set(label))

    rows = []
    for value in range(first, last + 1):
        weight = sum(len(els) * stab[label][value] for label, els in LATTICE.subgroups.items())
        if weight % 12:
            raise AssertionError(f"orbit weight {weight} at {statistic} {value} is not a multiple of 12")
        rows.append((
            value,
            fix["id"][value], fix["ds3"][value], fix["da2"][value],
            fix["r"][value], fix["r2"][value], fix["r3"][value],
            weight // 12,
            at_least("D6", value), at_least("F31", value), at_least("H31", value), at_least("D23", value),
            stab["0"][value],
        ))
    return rows


def oracle_window(statistic: str, max_value: int) -> tuple[int, int]:
    """``(max_area, max_hp)`` to enumerate so that rows up to ``max_value`` are complete."""
    if statistic == "area":
        return max_value, 2 * max_value + 1
    return max(max_value, (max_value * max_value + 3) // 12), max_value
