from collections import Counter

import pytest

from hexconvex.directed_series import dc_assemble, dc_h0, dc_h1, dc_h2, dc_normalized
from hexconvex.honeycomb_oracle import directed_counts
from hexconvex.series_core import SeriesRequest, mono

XQUV = ("x", "q", "u", "v")


def lowest(f):
    return min(f.items(), key=lambda mc: (mc[0].eq, mc[0].ex, mc[0].ev))


def test_block_terms():
    req = SeriesRequest(4, 0, XQUV)
    h0 = dc_h0(req)
    assert lowest(h0) == (mono(x=1, q=1, v=1), 1)
    assert all(m.eu == 0 for m, _ in h0.items())
    h1 = dc_h1(req)
    assert h1.coeff(mono(x=1, q=1, u=1, v=1)) == 1
    assert all(m.eu >= m.ev for m, _ in h1.items())
    h2 = dc_h2(req)
    assert h2.coeff(mono(x=1, q=1, u=1, v=1)) == 1
    assert h2.coeff(mono(x=2, q=3, u=2, v=1)) == 1


def test_dc0_lowest_term():
    dc0, _, _ = dc_assemble(SeriesRequest(3, 7, ("x", "q", "v", "t")))
    assert lowest(dc0) == (mono(x=1, q=1, v=1, t=3), 1)


@pytest.fixture(scope="module")
def oracle():
    return directed_counts(8, 17)


@pytest.mark.parametrize("phase", [0, 1, 2])
def test_directed_phases_match_enumeration(oracle, phase):
    dcs = dc_assemble(SeriesRequest(8, 17, ("x", "q", "v", "t")))
    series = Counter({(m.ex, m.eq, m.ev, m.et): c for m, c in dcs[phase].items()})
    assert series == oracle[phase]


def test_normalized_tables_are_polynomials_in_q_t():
    for table in dc_normalized(SeriesRequest(4, 8, ("q", "t"))):
        for (r, n), f in table.items():
            assert all(m.eq >= 0 and m.et >= 0 for m, _ in f.items())
