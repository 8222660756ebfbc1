from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hexconvex.series_core import (
    ExponentVector,
    InvariantViolation,
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    add,
    dump,
    extract_coeff,
    finalize,
    gaussian_coefficients,
    invert_one_minus,
    mono,
    mul,
    parse_dump,
    pochhammer,
    inverse_pochhammer,
    power,
    q_binomial,
    reciprocal,
    shift_monomial,
    split_by,
    substitute,
    sum_series,
)

BQ, BT = 6, 8

exponents = st.tuples(
    st.integers(0, 3),  # x
    st.integers(0, BQ),  # q
    st.integers(0, 2),  # u
    st.integers(0, 2),  # v
    st.just(0),  # s
    st.integers(0, BT),  # t
)
series = st.dictionaries(exponents, st.integers(-5, 5), max_size=8).map(
    lambda d: TruncatedSeries({ExponentVector(*k): c for k, c in d.items()}, BQ, BT)
)


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(a, TruncatedSeries.one(BQ, BT)) == a
    assert add(a, -a) == TruncatedSeries.zero(BQ, BT)


@settings(max_examples=60, deadline=None)
@given(series)
def test_split_and_extract_reassemble(f):
    parts = split_by(f, "x")
    rebuilt = sum_series([shift_monomial(g, mono(x=n)) for n, g in parts.items()], BQ, BT)
    assert rebuilt == f
    for n, g in parts.items():
        assert extract_coeff(f, "x", n) == g


@settings(max_examples=60, deadline=None)
@given(series)
def test_substitute_identity_and_roundtrip(f):
    assert substitute(f, {}) == f
    swapped = substitute(substitute(f, {"u": mono(v=1), "v": mono(u=1)}), {"u": mono(v=1), "v": mono(u=1)})
    assert swapped == f


@settings(max_examples=40, deadline=None)
@given(series)
def test_dump_roundtrip(f):
    assert parse_dump(dump(f), BQ, BT) == f


@given(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3))
def test_geometric_inverts_one_minus(eq, et, coef):
    if eq == et == 0:
        return
    m = mono(x=1, q=eq, t=et)
    one_minus = TruncatedSeries({ExponentVector(): 1, m: -coef}, BQ, BT)
    assert mul(one_minus, invert_one_minus(m, BQ, BT, coef)) == TruncatedSeries.one(BQ, BT)


@given(st.integers(0, 9), st.data())
def test_q_binomial_symmetry_and_q_one(n, data):
    k = data.draw(st.integers(0, n))
    g = gaussian_coefficients(n, k)
    assert g == gaussian_coefficients(n, n - k)
    assert sum(g) == comb(n, k)
    assert g == g[::-1]  # palindromic
    assert len(g) == k * (n - k) + 1


def test_q_binomial_series_and_pascal():
    f = q_binomial(4, 2, mono(q=1), 10)
    assert [f.coeff(mono(q=i)) for i in range(5)] == [1, 1, 2, 1, 1]
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    for n in range(1, 8):
        for k in range(1, n):
            lhs = q_binomial(n, k, mono(q=1), 30)
            rhs = add(q_binomial(n - 1, k - 1, mono(q=1), 30), shift_monomial(q_binomial(n - 1, k, mono(q=1), 30), mono(q=k)))
            assert lhs == rhs.with_bounds(30, 0)


def test_pochhammer_and_inverse():
    p = pochhammer(mono(q=1), mono(q=1), 4, 12, 0)
    assert mul(p, inverse_pochhammer(mono(q=1), mono(q=1), 4, 12, 0)) == TruncatedSeries.one(12, 0)
    assert reciprocal(p) == inverse_pochhammer(mono(q=1), mono(q=1), 4, 12, 0)


def test_power_matches_repeated_product():
    f = TruncatedSeries({mono(q=1): 1, mono(t=1): 2, ExponentVector(): 1}, 5, 5)
    assert power(f, 3) == mul(f, mul(f, f))


def test_window_never_widens():
    f = TruncatedSeries({mono(q=1): 1}, 3, 3)
    assert f.with_bounds(2, 2).bound_q == 2
    with pytest.raises(SeriesError):
        f.with_bounds(4, 3)


def test_terms_outside_window_are_dropped():
    f = TruncatedSeries({mono(q=4): 1, mono(q=2): 3}, 3, 3)
    assert f.terms == {mono(q=2): 3}


def test_laurent_shift_moves_window():
    f = TruncatedSeries({mono(q=2, t=3): 1}, 5, 5)
    g = shift_monomial(f, mono(t=-3))
    assert g.bound_t == 2 and g.coeff(mono(q=2)) == 1


def test_exact_div():
    f = TruncatedSeries({mono(q=1): 12, mono(q=2): 24}, 3, 3)
    assert f.exact_div(12).coeff(mono(q=2)) == 2
    with pytest.raises(SeriesError):
        TruncatedSeries({mono(q=1): 5}, 3, 3).exact_div(12)


def test_finalize_gates():
    finalize(TruncatedSeries({mono(q=1): 2}, 3, 3))
    with pytest.raises(InvariantViolation):
        finalize(TruncatedSeries({mono(q=1): -1}, 3, 3))
    with pytest.raises(InvariantViolation):
        finalize(shift_monomial(TruncatedSeries({mono(q=1): 1}, 3, 3), mono(t=-1)))


def test_divergent_geometric_rejected():
    with pytest.raises(SeriesError):
        invert_one_minus(mono(x=1), 3, 3)


def test_request_drops_inactive_variables():
    req = SeriesRequest(4, 4, ("q", "t"))
    assert req.m(x=2, q=1) == mono(q=1)
    f = TruncatedSeries({mono(x=2, q=1): 1, mono(x=1, q=1): 1}, 4, 4)
    assert req.restrict(f) == TruncatedSeries({mono(q=1): 2}, 4, 4)
