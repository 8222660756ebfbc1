"""Orbit counts and exact-stabilizer counts from fixed-point series.

``F_{>=K}`` is the series of polyominoes whose stabilizer contains the
subgroup ``K``; ``F_{=K}`` those whose stabilizer is exactly ``K``.  Both are
keyed by the lattice labels of :mod:`hexconvex.group_d6`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group_d6 import EXPECTED_MOEBIUS, LATTICE, SubgroupLattice
from .series_core import InvariantViolation, SeriesError, TruncatedSeries, finalize, sum_series

TABLE_COLUMNS = ("id", "h", "v", "r", "r2", "r3", "orbits", "D6", "F31", "H31", "D2", "asym")

# which fixed-point series gives F_{>=K}; conjugate subgroups share one series
_AT_LEAST_SOURCE = {
    "0": "id",
    "C2": "r3",
    "C3": "r2",
    "C6": "r",
    "F11": "h", "F12": "h", "F13": "h",
    "H11": "v", "H12": "v", "H13": "v",
    "F31": "F31",
    "H31": "H31",
    "D21": "D23", "D22": "D23", "D23": "D23",
    "D6": "D6",
}


def _combine(weighted, bound_q: int, bound_t: int) -> TruncatedSeries:
    return sum_series([f.scale(w) for f, w in weighted if w], bound_q, bound_t)


def _window(fix_map) -> tuple[int, int]:
    return min(f.bound_q for f in fix_map.values()), min(f.bound_t for f in fix_map.values())


def burnside_orbits(fix_map: dict[str, TruncatedSeries]) -> TruncatedSeries:
    """(id + 2 r + 2 r2 + r3 + 3 v + 3 h) / 12, dividing every coefficient exactly."""
    bq, bt = _window(fix_map)
    weights = {"id": 1, "r": 2, "r2": 2, "r3": 1, "v": 3, "h": 3}
    total = _combine([(fix_map[k], w) for k, w in weights.items()], bq, bt)
    try:
        return total.exact_div(12)
    except SeriesError as exc:
        raise InvariantViolation(f"Burnside sum not divisible by 12: {exc}") from exc


def at_least_map(fix_map: dict[str, TruncatedSeries]) -> dict[str, TruncatedSeries]:
    """``F_{>=K}`` for all sixteen subgroups."""
    return {label: fix_map[src] for label, src in _AT_LEAST_SOURCE.items()}


def exact_stabilizer_counts(
    label: str, at_least: dict[str, TruncatedSeries], lattice: SubgroupLattice = LATTICE
) -> TruncatedSeries:
    """``F_{=H} = sum_{K >= H} mu(H, K) F_{>=K}``, with mu computed on the lattice."""
    bq, bt = _window(at_least)
    out = _combine([(at_least[k], lattice.moebius(label, k)) for k in lattice.upper_set(label)], bq, bt)
    try:
        return finalize(out)
    except InvariantViolation as exc:
        raise InvariantViolation(f"negative exact-stabilizer count for {label}: {exc}") from exc


def asymmetric_count(fix_map: dict[str, TruncatedSeries]) -> TruncatedSeries:
    """Polyominoes with trivial stabilizer, by the closed inclusion-exclusion."""
    bq, bt = _window(fix_map)
    weights = [
        ("id", 1), ("h", -3), ("v", -3), ("r2", -1), ("r3", -1), ("r", 1),
        ("D23", 6), ("F31", 3), ("H31", 3), ("D6", -6),
    ]
    out = _combine([(fix_map[k], w) for k, w in weights], bq, bt)
    try:
        return finalize(out)
    except InvariantViolation as exc:
        raise InvariantViolation(f"negative asymmetric count: {exc}") from exc


def check_moebius_values(lattice: SubgroupLattice = LATTICE) -> None:
    """Raise unless the computed mu(0, H) agree with the reference values."""
    for label, expected in EXPECTED_MOEBIUS.items():
        got = lattice.moebius("0", label)
        if got != expected:
            raise InvariantViolation(f"mu(0, {label}) = {got}, expected {expected}")


def marginal(f: TruncatedSeries, statistic: str) -> dict[int, int]:
    """Collapse a (q, t) series to one statistic: ``area`` (q) or ``half-perimeter`` (t)."""
    out: dict[int, int] = {}
    for m, c in f.items():
        key = m.eq if statistic == "area" else m.et
        out[key] = out.get(key, 0) + c
    return out


@dataclass
class SymmetryTable:
    statistic: str
    rows: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def header(self) -> tuple[str, ...]:
        return ("stat",) + TABLE_COLUMNS

    def column(self, name: str) -> list[int]:
        i = self.header.index(name)
        return [row[i] for row in self.rows]

    def row(self, value: int) -> dict[str, int]:
        for row in self.rows:
            if row[0] == value:
                return dict(zip(self.header, row))
        raise KeyError(value)


def window_for(statistic: str, max_value: int) -> tuple[int, int]:
    """Truncation window that determines every row up to ``max_value``.

    Half-perimeter is at most 2 * area + 1; on the honeycomb a polyomino of
    half-perimeter M has area at most (M^2 + 3) // 12 (attained by hexagons).
    """
    if max_value < 1:
        raise ValueError("max_value must be >= 1")
    if statistic == "area":
        return max_value, 2 * max_value + 1
    if statistic == "half-perimeter":
        return max(max_value, (max_value * max_value + 3) // 12), max_value
    raise ValueError(f"unknown statistic {statistic!r}")


def table_series(fix_map: dict[str, TruncatedSeries]) -> dict[str, TruncatedSeries]:
    """The twelve table columns as (q, t) series, after the row identities pass."""
    check_moebius_values()
    orbits = burnside_orbits(fix_map)
    asym = asymmetric_count(fix_map)
    at_least = at_least_map(fix_map)
    exact = {label: exact_stabilizer_counts(label, at_least) for label in LATTICE.subgroups}
    if exact["0"] != asym:
        raise InvariantViolation("Moebius inversion at the trivial subgroup disagrees with the asymmetric count")
    bq, bt = _window(fix_map)
    if sum_series(exact.values(), bq, bt) != fix_map["id"].with_bounds(bq, bt):
        raise InvariantViolation("exact-stabilizer classes do not partition the convex polyominoes")
    cols = {k: fix_map[k] for k in ("id", "h", "v", "r", "r2", "r3", "D6", "F31", "H31")}
    cols.update(orbits=orbits, D2=fix_map["D23"], asym=asym)
    return cols


def build_table(statistic: str, max_value: int, fix_map: dict[str, TruncatedSeries] | None = None) -> SymmetryTable:
    """Rows 1..max_value (area) or 3..max_value (half-perimeter)."""
    if fix_map is None:
        from .symmetry_series import all_fix_series

        fix_map = all_fix_series(*window_for(statistic, max_value))
    cols = table_series(fix_map)
    margins = {name: marginal(f, statistic) for name, f in cols.items()}
    first = 1 if statistic == "area" else 3
    table = SymmetryTable(statistic)
    for value in range(first, max_value + 1):
        table.rows.append((value,) + tuple(margins[c].get(value, 0) for c in TABLE_COLUMNS))
    return table
