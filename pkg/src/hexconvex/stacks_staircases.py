"""Building-block families: distinct-part partitions, staircases, stacks.

Variable conventions follow the rest of the package: ``x`` counts columns,
``q`` area, ``u`` the first column, ``v`` the last column, ``t`` the
half-perimeter.  Stack series ``T``, ``TS`` use ``u`` for the height of the
first (tallest) column and carry no ``t``.
"""

from __future__ import annotations

from functools import lru_cache

from .series_core import (
    ExponentVector,
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    add,
    extract_coeff,
    inverse_pochhammer,
    mono,
    mul,
    q_binomial,
    reciprocal,
    substitute,
    sum_series,
)


def distinct_partitions(m: int, req: SeriesRequest) -> TruncatedSeries:
    """``D_m(u, q) = (1 + uq)(1 + uq^2)...(1 + uq^m)``."""
    if m < 0:
        raise SeriesError("D_m needs m >= 0")
    result = req.one()
    for i in range(1, m + 1):
        result = mul(result, req.one() + req.monomial(u=1, q=i))
    return result


# -- staircases ---------------------------------------------------------------

def _staircase_request(req: SeriesRequest) -> SeriesRequest:
    # v is needed internally for the catalytic recursion
    return req.with_active(req.active | {"v"})


def staircase_functional(req: SeriesRequest) -> TruncatedSeries:
    """Staircase polyominoes by iterating the add-a-column equation.

    Pa(v) = xquvt^3/(1-quvt^2) + xqvt^2/((1-qvt^2)(1-qv)) (Pa(1) - Pa(vq)),
    seeded with 0.  Each pass fixes at least one more q-degree.
    """
    full = _staircase_request(req)
    base = mul(full.monomial(x=1, q=1, u=1, v=1, t=3), full.geometric(q=1, u=1, v=1, t=2))
    kernel = mul(
        full.monomial(x=1, q=1, v=1, t=2),
        mul(full.geometric(q=1, v=1, t=2), full.geometric(q=1, v=1)),
    )
    at_one = {"v": ExponentVector()}
    shift = {"v": mono(v=1, q=1)}
    current = full.zero()
    for _ in range(req.bound_q + req.bound_t + 2):
        nxt = add(base, mul(kernel, substitute(current, at_one) - substitute(current, shift)))
        nxt = nxt.with_bounds(req.bound_q, req.bound_t)
        if nxt == current:
            return req.restrict(current)
        current = nxt
    raise SeriesError("staircase iteration did not converge")


def _bessel_parts(full: SeriesRequest, v_exp: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """J1 and J0 with v replaced by v^v_exp (0 evaluates at v = 1)."""
    def vm(k):
        return k * v_exp

    j1_terms, j0_terms = [], []
    n = 0
    while n * (n + 1) // 2 <= full.bound_q:
        poch = mul(
            inverse_pochhammer(full.m(q=1, v=vm(1), t=2), full.m(q=1), n, full.bound_q, full.bound_t),
            inverse_pochhammer(full.m(q=1, v=vm(1)), full.m(q=1), n, full.bound_q, full.bound_t),
        )
        sign = -1 if n % 2 else 1
        j0_terms.append(
            mul(full.monomial(sign, x=n, v=vm(n), t=2 * n, q=n * (n + 1) // 2), poch)
        )
        j1 = mul(
            full.monomial(sign, x=n + 1, v=vm(n + 1), u=1, t=2 * n + 3, q=(n + 1) * (n + 2) // 2),
            poch,
        )
        j1_terms.append(mul(j1, full.geometric(q=n + 1, u=1, v=vm(1), t=2)))
        n += 1
    bq, bt = full.bound_q, full.bound_t
    return sum_series(j1_terms, bq, bt), sum_series(j0_terms, bq, bt)


def bessel_j(req: SeriesRequest, at_v_one: bool = False) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The pair ``(J1(v), J0(v))``, or ``(J1(1), J0(1))``."""
    full = _staircase_request(req)
    return _bessel_parts(full, 0 if at_v_one else 1)


def staircase_bessel(req: SeriesRequest) -> TruncatedSeries:
    """Staircases as a quotient of q-Bessel type series.

    Pa(v) = (J1(1) + J1(v) J0(1) - J1(1) J0(v)) / J0(1).
    """
    full = _staircase_request(req)
    j1v, j0v = _bessel_parts(full, 1)
    j11, j01 = _bessel_parts(full, 0)
    numerator = add(add(j11, mul(j1v, j01)), -mul(j11, j0v))
    return req.restrict(mul(numerator, reciprocal(j01)))


def staircase_coefficient(pa: TruncatedSeries, i: int, j: int) -> TruncatedSeries:
    """``Pa_{i,j}``: first column of size i, last column of size j."""
    return extract_coeff(extract_coeff(pa, "u", i), "v", j)


# -- stacks -----------------------------------------------------------------


def stack_series(req: SeriesRequest) -> TruncatedSeries:
    """T(x, u, q) = sum_m x^m q^{m(m+1)/2} u^m / ((uq;q)_{m-1})^2 (1 - uq^m)."""
    terms = []
    m = 1
    while m * (m + 1) // 2 <= req.bound_q:
        inv = inverse_pochhammer(req.m(u=1, q=1), req.m(q=1), m - 1, req.bound_q, req.bound_t)
        term = mul(req.monomial(x=m, u=m, q=m * (m + 1) // 2), mul(inv, inv))
        terms.append(mul(term, req.geometric(u=1, q=m)))
        m += 1
    return sum_series(terms, req.bound_q, req.bound_t)


def _gauss_ext(n: int, k: int) -> tuple[int, ...]:
    """Gaussian binomial with the empty-box convention ``[-1 choose -1] = 1``."""
    if n == -1 and k in (-1, 0):
        return (1,)
    from .series_core import gaussian_coefficients

    return gaussian_coefficients(n, k)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def stack_column_closed(n: int, req: SeriesRequest) -> TruncatedSeries:
    """T_n(x, q) from the double sum over widths m and offsets j."""
    if n < 1:
        raise SeriesError("T_n needs n >= 1")
    terms = {}
    for m in range(1, n + 1):
        total: list[int] = []
        for j in range(0, n - m + 1):
            prod = _poly_mul(_gauss_ext(m + j - 1, m - 1), _gauss_ext(n - j - 2, m - 2))
            if len(prod) > len(total):
                total.extend([0] * (len(prod) - len(total)))
            for i, c in enumerate(prod):
                total[i] += c
        base = n + m * (m - 1) // 2
        for i, c in enumerate(total):
            if c:
                key = req.m(x=m, q=base + i)
                terms[key] = terms.get(key, 0) + c
    return req.series(terms)


@lru_cache(maxsize=None)
def _stack_open_poly(n: int) -> dict[tuple[int, int], int]:
    """TO_n as ``{(x_exp, q_exp): coef}``."""
    if n == 0:
        return {(0, 0): 1}
    if n == 1:
        return {(0, 0): 1, (1, 1): 1}
    prev, prev2 = _stack_open_poly(n - 1), _stack_open_poly(n - 2)
    out: dict[tuple[int, int], int] = {}
    for (ex, eq), c in prev.items():
        out[(ex, eq)] = out.get((ex, eq), 0) + 2 * c
        key = (ex + 1, eq + n)
        out[key] = out.get(key, 0) + c
    for key, c in prev2.items():
        out[key] = out.get(key, 0) - c
    return {k: c for k, c in out.items() if c}


def stack_open(n: int, req: SeriesRequest, x: ExponentVector | None = None, q: ExponentVector | None = None) -> TruncatedSeries:
    """TO_n(x, q), optionally evaluated at monomials ``x -> x``, ``q -> q``.

    TO_0 = 1, TO_1 = 1 + xq, TO_n = (2 + xq^n) TO_{n-1} - TO_{n-2}.
    """
    if n < 0:
        raise SeriesError("TO_n needs n >= 0")
    return _poly_to_series(_stack_open_poly(n), req, x, q)


def _poly_to_series(poly, req, x, q) -> TruncatedSeries:
    x = req.m(x=1) if x is None else ExponentVector(*x)
    q = req.m(q=1) if q is None else ExponentVector(*q)
    terms: dict[ExponentVector, int] = {}
    for (ex, eq), c in poly.items():
        key = x.scaled(ex) + q.scaled(eq)
        terms[key] = terms.get(key, 0) + c
    return req.series(terms)


def stack_column(n: int, req: SeriesRequest) -> TruncatedSeries:
    """T_n(x, q) = x q^n TO_{n-1}(x, q), cross-checked against the closed form."""
    via_open = mul(req.monomial(x=1, q=n), stack_open(n - 1, req))
    closed = stack_column_closed(n, req)
    if via_open != closed:
        raise SeriesError(f"T_{n}: closed form and TO recurrence disagree")
    return via_open


# -- symmetric stacks -------------------------------------------------------------


def symmetric_stack_series(req: SeriesRequest) -> TruncatedSeries:
    """TS(x, u, q) = sum_m x^m u^m q^{m(m+1)/2} (1 + uq^m) / prod_{i<=m} (1 - u^2 q^{2i})."""
    terms = []
    m = 1
    while m * (m + 1) // 2 <= req.bound_q:
        term = req.monomial(x=m, u=m, q=m * (m + 1) // 2)
        term = mul(term, req.one() + req.monomial(u=1, q=m))
        term = mul(term, inverse_pochhammer(req.m(u=2, q=2), req.m(q=2), m, req.bound_q, req.bound_t))
        terms.append(term)
        m += 1
    return sum_series(terms, req.bound_q, req.bound_t)


@lru_cache(maxsize=None)
def _sym_open_poly(n: int) -> dict[tuple[int, int], int]:
    if n in (-1, 0):
        return {(0, 0): 1}
    if n < -1:
        raise SeriesError("TS0_n needs n >= -1")
    out = dict(_sym_open_poly(n - 2))
    for (ex, eq), c in _sym_open_poly(n - 1).items():
        key = (ex + 1, eq + n)
        out[key] = out.get(key, 0) + c
    return out


def symmetric_stack_open(n: int, req: SeriesRequest, x: ExponentVector | None = None, q: ExponentVector | None = None) -> TruncatedSeries:
    """TS0_n(x, q): TS0_{-1} = TS0_0 = 1, TS0_n = x q^n TS0_{n-1} + TS0_{n-2}."""
    return _poly_to_series(_sym_open_poly(n), req, x, q)


def symmetric_stack_column(n: int, req: SeriesRequest, x: ExponentVector | None = None, q: ExponentVector | None = None) -> TruncatedSeries:
    """TS_n(x, q) = x q^n TS0_{n-1}(x, q)."""
    if n < 1:
        raise SeriesError("TS_n needs n >= 1")
    poly = {(ex + 1, eq + n): c for (ex, eq), c in _sym_open_poly(n - 1).items()}
    return _poly_to_series(poly, req, x, q)


def stack_open_poly(n: int) -> dict[tuple[int, int], int]:
    return dict(_stack_open_poly(n))


def symmetric_stack_open_poly(n: int) -> dict[tuple[int, int], int]:
    return dict(_sym_open_poly(n))


__all__ = [
    "distinct_partitions",
    "staircase_functional",
    "staircase_bessel",
    "staircase_coefficient",
    "bessel_j",
    "stack_series",
    "stack_column",
    "stack_column_closed",
    "stack_open",
    "symmetric_stack_series",
    "symmetric_stack_open",
    "symmetric_stack_column",
    "q_binomial",
]
