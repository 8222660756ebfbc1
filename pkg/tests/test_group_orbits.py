import pytest

from hexconvex.group_d6 import LATTICE
from hexconvex.group_orbits import (
    TABLE_COLUMNS,
    asymmetric_count,
    at_least_map,
    build_table,
    burnside_orbits,
    check_moebius_values,
    exact_stabilizer_counts,
    marginal,
    table_series,
    window_for,
)
from hexconvex.series_core import InvariantViolation, TruncatedSeries, add, mono, sum_series


def test_burnside_rows(fix_small):
    orbits = marginal(burnside_orbits(fix_small), "area")
    assert [orbits[n] for n in range(1, 8)] == [1, 1, 3, 6, 15, 38, 91]


def test_asymmetric_rows(fix_small):
    asym = marginal(asymmetric_count(fix_small), "area")
    assert asym.get(1, 0) == 0
    assert asym[7] == 939 - 27 - 81 - 3 - 37 + 1 + 18 + 3 + 9 - 6 == 816


def test_half_perimeter_identities():
    t = build_table("half-perimeter", 9)
    row = t.row(9)
    assert row["orbits"] == (59 + 2 * 1 + 2 * 5 + 19 + 3 * 9 + 3 * 5) // 12 == 11
    assert row["asym"] == 59 - 15 - 27 - 5 - 19 + 1 + 18 + 9 + 9 - 6 == 24


def test_moebius_inversion_is_consistent(fix_small):
    check_moebius_values()
    at_least = at_least_map(fix_small)
    exact = {label: exact_stabilizer_counts(label, at_least) for label in LATTICE.subgroups}
    assert exact["0"] == asymmetric_count(fix_small)
    assert exact["D6"] == at_least["D6"]
    bq, bt = fix_small["id"].bound_q, fix_small["id"].bound_t
    assert sum_series(exact.values(), bq, bt) == fix_small["id"]
    # orbit-stabilizer: orbits = sum over classes of |H| F_{=H} / 12
    weighted = sum_series([f.scale(len(LATTICE.subgroups[k])) for k, f in exact.items()], bq, bt)
    assert weighted.exact_div(12) == burnside_orbits(fix_small)


def test_non_divisible_burnside_is_flagged(fix_small):
    broken = dict(fix_small)
    broken["h"] = add(fix_small["h"], TruncatedSeries({mono(q=2, t=5): 1}, 10, 21))
    with pytest.raises(InvariantViolation):
        burnside_orbits(broken)


def test_negative_stabilizer_count_is_flagged(fix_small):
    broken = dict(fix_small)
    broken["D6"] = add(fix_small["D6"], TruncatedSeries({mono(q=4, t=8): 5}, 10, 21))
    with pytest.raises(InvariantViolation):
        table_series(broken)


def test_windows():
    assert window_for("area", 20) == (20, 41)
    assert window_for("half-perimeter", 16) == (21, 16)
    with pytest.raises(ValueError):
        window_for("volume", 3)


def test_table_shape(fix_small):
    t = build_table("area", 10, fix_small)
    assert t.header == ("stat",) + TABLE_COLUMNS
    assert [r[0] for r in t.rows] == list(range(1, 11))
    assert t.row(1) == dict(zip(t.header, (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0)))
    assert t.column("id")[:5] == [1, 3, 11, 38, 120]


@pytest.mark.slow
def test_extension_rows_pass_identities():
    # rows past the reference range are only checked by Burnside divisibility,
    # the Moebius partition and nonnegativity, all enforced inside build_table
    t = build_table("area", 24)
    assert [r[0] for r in t.rows][-4:] == [21, 22, 23, 24]
    for row in t.rows:
        r = dict(zip(t.header, row))
        assert 12 * r["orbits"] == r["id"] + 2 * r["r"] + 2 * r["r2"] + r["r3"] + 3 * r["v"] + 3 * r["h"]
        assert r["asym"] >= 0
