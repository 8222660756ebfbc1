from collections import Counter

import pytest

from hexconvex.honeycomb_oracle import BLOCK_MOVES, weight_counts
from hexconvex.phase_blocks import (
    PhaseState,
    all_blocks,
    block_h00_h22,
    block_h01_h12_h21,
    block_h02_h20,
    block_h10,
    block_h10_quadruple,
    block_h10_sum,
    block_h11b,
    h10_functional_rhs,
    swap_uv,
)
from hexconvex.series_core import SeriesRequest, mono
from hexconvex.stacks_staircases import staircase_functional

FULL = ("x", "q", "u", "v", "t")


def lowest(f):
    return min(f.items(), key=lambda mc: (mc[0].eq, mc[0].et, mc[0].ex))


def test_phase_state():
    assert PhaseState(0, 0).can_reach(PhaseState(1, 2))
    assert not PhaseState(2, 0).can_reach(PhaseState(1, 0))
    with pytest.raises(ValueError):
        PhaseState(3, 0)


def test_lowest_terms():
    req = SeriesRequest(5, 11, FULL)
    h00, h22 = block_h00_h22(req)
    assert lowest(h00) == (mono(x=1, q=1, v=1, t=3), 1)
    assert swap_uv(h00) == h22
    assert lowest(block_h10(req)) == (mono(x=1, q=1, u=1, v=1, t=3), 1)
    assert lowest(block_h11b(req)) == (mono(x=1, q=2, u=2, v=2, t=5), 1)
    assert block_h02_h20(req) == staircase_functional(req)


def test_h10_single_column_part():
    req = SeriesRequest(6, 13, FULL)
    one_column = {m: c for m, c in block_h10(req).items() if m.ex == 1}
    assert one_column == {mono(x=1, q=k, u=k, v=k, t=2 * k + 1): 1 for k in range(1, 7)}


def test_h10_three_forms_agree():
    req = SeriesRequest(8, 17, FULL)
    h10 = block_h10_sum(req)
    assert h10_functional_rhs(h10, req).agrees_with(h10)
    assert block_h10_quadruple(req) == h10


def test_derived_blocks():
    req = SeriesRequest(6, 13, FULL)
    h01, h12, h21 = block_h01_h12_h21(req)
    assert h01 == block_h10(req)
    assert h12 == h21 == swap_uv(h01)
    assert swap_uv(swap_uv(h12)) == h12


@pytest.fixture(scope="module")
def blocks():
    return all_blocks(SeriesRequest(7, 15, FULL))


@pytest.mark.parametrize("state", sorted(BLOCK_MOVES))
def test_blocks_match_enumeration(blocks, state):
    series = Counter({(m.ex, m.eq, m.eu, m.ev, m.et): c for m, c in blocks[state].items()})
    oracle = weight_counts(7, 15, BLOCK_MOVES[state])
    if state == (0, 0):  # only the last column is marked
        oracle = _drop(oracle, 2)
    if state == (2, 2):  # only the first column is marked
        oracle = _drop(oracle, 3)
    assert series == oracle


def _drop(counts, index):
    out = Counter()
    for key, c in counts.items():
        out[key[:index] + (0,) + key[index + 1:]] += c
    return out
