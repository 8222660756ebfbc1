from collections import Counter

import pytest

from hexconvex.group_d6 import ELEMENTS, LATTICE
from hexconvex.honeycomb_oracle import (
    Polyomino,
    enumerate_convex,
    free_canonical,
    half_perimeter,
    half_perimeter_of_cells,
    is_convex_cells,
    naive_convex_counts,
    oracle_census,
    oracle_table_rows,
    perimeter,
    phase_states,
    stabilizer,
)


def by_area(max_area):
    return Counter(p.area for p in enumerate_convex(max_area))


def test_small_counts():
    assert by_area(1) == {1: 1}
    assert by_area(2) == {1: 1, 2: 3}


def test_column_generator_matches_naive_filter():
    assert by_area(7) == naive_convex_counts(7)


def test_perimeters():
    (single,) = enumerate_convex(1)
    assert perimeter(single) == 6 and half_perimeter(single) == 3
    dominoes = [p for p in enumerate_convex(2) if p.area == 2]
    assert {half_perimeter(p) for p in dominoes} == {5}
    for p in enumerate_convex(6):
        cells = set(p.cells())
        assert half_perimeter(p) == half_perimeter_of_cells(cells)


def test_stabilizers():
    (single,) = enumerate_convex(1)
    assert stabilizer(single).label == "D6"
    vertical = Polyomino(((0, 2),))  # two cells in one column share a horizontal edge
    assert stabilizer(vertical).elements == {"id", "r3", "ds3", "da2"}
    labels = Counter(stabilizer(p).label for p in enumerate_convex(2) if p.area == 2)
    assert labels == {"D21": 1, "D22": 1, "D23": 1}


def test_convexity_is_invariant_under_the_group():
    for p in enumerate_convex(6):
        cube = p.cube_cells()
        for g in ELEMENTS.values():
            moved = [g.apply(c) for c in cube]
            cells = frozenset((a, 2 * c + a) for a, _, c in moved)
            assert is_convex_cells(cells)


def test_phase_annotation_is_monotone():
    for p in enumerate_convex(7):
        states = phase_states(p)
        for (u0, l0), (u1, l1) in zip(states, states[1:]):
            assert u0 <= u1 and l0 <= l1


@pytest.fixture(scope="module")
def census9():
    return oracle_census(9, 19)


def test_conjugate_elements_fix_the_same_number(census9):
    fix = census9.fix["area"]
    assert fix["da1"] == fix["da2"] == fix["da3"]
    assert fix["ds1"] == fix["ds2"] == fix["ds3"]
    assert fix["r"] == fix["r5"]
    assert fix["r2"] == fix["r4"]


def test_orbit_counts_agree(census9):
    free = Counter()
    seen = set()
    for p in enumerate_convex(9):
        key = free_canonical(p)
        if key not in seen:
            seen.add(key)
            free[p.area] += 1
    fix = census9.fix["area"]
    weights = {"id": 1, "r": 1, "r5": 1, "r2": 1, "r4": 1, "r3": 1,
               "ds1": 1, "ds2": 1, "ds3": 1, "da1": 1, "da2": 1, "da3": 1}
    for n in range(1, 10):
        burnside = sum(w * fix[g][n] for g, w in weights.items())
        assert burnside % 12 == 0
        assert free[n] == burnside // 12
    rows = oracle_table_rows(census9, "area", 1, 9)
    assert [r[7] for r in rows] == [free[n] for n in range(1, 10)]


def test_stabilizer_classes_partition(census9):
    stab = census9.stab["area"]
    for n in range(1, 10):
        assert sum(stab[label][n] for label in LATTICE.subgroups) == census9.total["area"][n]


def test_parallel_enumeration_is_deterministic():
    serial = [p.columns for p in enumerate_convex(8)]
    parallel = [p.columns for p in enumerate_convex(8, threads=3)]
    assert serial == parallel
    a = oracle_census(8, threads=1)
    b = oracle_census(8, threads=3)
    assert a.fix == b.fix and a.stab == b.stab and a.last_state == b.last_state
