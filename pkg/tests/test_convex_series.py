from collections import Counter

import pytest

from hexconvex.convex_series import (
    STATES,
    junction_moves,
    next_phase,
    phase_series,
    reachable,
    shared_edges,
    convex_series,
)
from hexconvex.honeycomb_oracle import column_contacts, oracle_census
from hexconvex.series_core import SeriesError, SeriesRequest, mono

from conftest import grid


def marginal(f, var):
    out = Counter()
    for m, c in f.items():
        out[getattr(m, "e" + var)] += c
    return dict(sorted(out.items()))


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("n", range(1, 6))
def test_shared_edges_match_direct_count(k, n):
    for b in range(1 - 2 * n, 2 * k, 2):
        assert shared_edges(k, n, b) == column_contacts((0, 2 * k - 2), (b, b + 2 * n - 2))


def test_next_phase_rules():
    assert next_phase(0, 3) == 0 and next_phase(0, -1) == 1 and next_phase(0, -3) == 2
    assert next_phase(1, 1) == 1 and next_phase(1, -3) == 2 and next_phase(1, 3) is None
    assert next_phase(2, 1) is None
    assert not reachable((1, 0), (0, 1)) and reachable((0, 0), (2, 2))


def test_junction_moves_reach_destination():
    for src in STATES:
        for dst in STATES:
            for b in junction_moves(src, dst, 3, 2):
                a = b + 2 * (2 - 3)
                assert (next_phase(src[0], a), next_phase(src[1], -b)) == dst


def test_convex_marginals():
    by_area = marginal(convex_series(SeriesRequest(5, 11, ("q", "t"))), "q")
    assert by_area == {1: 1, 2: 3, 3: 11, 4: 38, 5: 120}
    by_hp = marginal(convex_series(SeriesRequest(8, 8, ("q", "t"))), "t")
    assert [by_hp.get(p, 0) for p in range(3, 9)] == [1, 0, 3, 2, 12, 18]


def test_c00_lowest_and_symmetric_pairs():
    ph = phase_series(SeriesRequest(6, 13, ("x", "q", "v", "t")))
    assert min(ph[(0, 0)].items(), key=lambda mc: mc[0].eq) == (mono(x=1, q=1, v=1, t=3), 1)
    assert ph[(1, 0)] == ph[(0, 1)] and ph[(2, 0)] == ph[(0, 2)] and ph[(2, 1)] == ph[(1, 2)]
    assert min(m.eq for m, _ in ph[(1, 1)].items()) >= 2


def test_t_required():
    with pytest.raises(SeriesError):
        phase_series(SeriesRequest(3, 7, ("q",)))


def test_every_phase_matches_last_column_census():
    census = oracle_census(8, 17)
    series = phase_series(SeriesRequest(8, 17, ("q", "t")))
    for state in STATES:
        assert grid(series[state]) == Counter(census.last_state.get(state, {})), state
