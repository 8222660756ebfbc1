"""Directed convex polyominoes with a diagonal basis.

Every column starts one half-cell above the previous one, so the lower
profile is a straight diagonal and only the upper profile has phases:
0 (weakly growing columns), 1 (equal or one shorter), 2 (strictly shorter).
``x`` counts columns, ``u`` the first column, ``v`` the last one.
"""

from __future__ import annotations

from .series_core import (
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    gaussian_coefficients,
    mono,
    mul,
    shift_monomial,
    split_by,
    substitute,
    sum_series,
)


def _add_term(terms: dict, key, coef: int) -> None:
    terms[key] = terms.get(key, 0) + coef


def dc_h0(req: SeriesRequest) -> TruncatedSeries:
    """H_0 = sum_{l,k >= 1} v^l x^k q^{l+k-1} [l+k-2 choose l-1]_q.

    A weakly increasing sequence of k column sizes ending at l.
    """
    terms: dict = {}
    for l in range(1, req.bound_q + 1):
        for k in range(1, req.bound_q - l + 2):
            for i, c in enumerate(gaussian_coefficients(l + k - 2, l - 1)):
                if l + k - 1 + i > req.bound_q:
                    break
                _add_term(terms, req.m(v=l, x=k, q=l + k - 1 + i), c)
    return req.series(terms)


def dc_h1(req: SeriesRequest) -> TruncatedSeries:
    """H_1 = sum_{l>=1} v^l sum_{m>=0} u^{l+m} sum_{k>=m+1} x^k q^{kl+m(m+1)/2} [k-1 choose m]_q."""
    terms: dict = {}
    bq = req.bound_q
    for l in range(1, bq + 1):
        m = 0
        while l + m * (m + 1) // 2 <= bq:
            for k in range(m + 1, bq // l + 1):
                base = k * l + m * (m + 1) // 2
                for i, c in enumerate(gaussian_coefficients(k - 1, m)):
                    if base + i > bq:
                        break
                    _add_term(terms, req.m(v=l, u=l + m, x=k, q=base + i), c)
            m += 1
    return req.series(terms)


def dc_h2(req: SeriesRequest) -> TruncatedSeries:
    """H_2 = sum_l v^l (x q^l u^l + sum_{k>=2} x^k sum_{m>=0} u^{l+k+m-1} q^{k(k+2l-1)/2+m} [m+k-2 choose k-2]_q)."""
    terms: dict = {}
    bq = req.bound_q
    for l in range(1, bq + 1):
        _add_term(terms, req.m(v=l, x=1, q=l, u=l), 1)
        k = 2
        while k * (k + 2 * l - 1) // 2 <= bq:
            base = k * (k + 2 * l - 1) // 2
            for m in range(0, bq - base + 1):
                for i, c in enumerate(gaussian_coefficients(m + k - 2, k - 2)):
                    if base + m + i > bq:
                        break
                    _add_term(terms, req.m(v=l, x=k, u=l + k + m - 1, q=base + m + i), c)
            k += 1
    return req.series(terms)


def _blocks(req: SeriesRequest):
    """H_0, H_1, H_2 without t, on the request's window."""
    inner = req.with_active(req.active | {"x", "u", "v"})
    return dc_h0(inner), dc_h1(inner), dc_h2(inner)


def dc_assemble(req: SeriesRequest) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """``(DC_0, DC_1, DC_2)`` in x, q, v, t.

    DC_0 = H_0(xt^2, q, vt^2) / t,
    DC_1 = sum_m t^{-(m+1)} DC_{0,m+1} H_{1,m}(xt^2, q, vt),
    DC_2 = sum_m sum_{h>=2} t^{-(m+1)} (DC_{0,m+h} + DC_{1,m+h}) H_{2,m}(xt^2, q, vt).

    ``t`` marks the half-perimeter of the whole polyomino.
    """
    bq, bt = req.bound_q, req.bound_t
    # the 1/t^m factors are Laurent; work on a taller t-window and clip at the end
    margin = bq + 3
    wide = SeriesRequest(bq, bt + margin, ("x", "q", "u", "v", "t"))
    h0, h1, h2 = _blocks(wide)
    xt2 = {"x": mono(x=1, t=2)}
    dc0 = shift_monomial(substitute(h0, {**xt2, "v": mono(v=1, t=2)}), mono(t=-1))
    dc0_by_v = split_by(dc0, "v")

    def glued(prefix_by_v, block, min_drop):
        parts = []
        for m, h_m in split_by(block, "u").items():
            tail = substitute(h_m, {**xt2, "v": mono(v=1, t=1)})
            heads = [f for n, f in prefix_by_v.items() if n >= m + min_drop and (min_drop > 1 or n == m + 1)]
            if heads:
                parts.append(shift_monomial(mul(sum_series(heads, bq, wide.bound_t), tail), mono(t=-m - 1)))
        return sum_series(parts, bq, wide.bound_t)

    dc1 = glued(dc0_by_v, h1, 1)
    dc01_by_v = split_by(sum_series([dc0, dc1], bq, dc1.bound_t), "v")
    dc2 = glued(dc01_by_v, h2, 2)
    return tuple(req.restrict(f.with_bounds(bq, bt)) for f in (dc0, dc1, dc2))


def dc_normalized(req: SeriesRequest) -> list[dict[tuple[int, int], TruncatedSeries]]:
    """``DC_{i,r,n}(q, t) = t^{-(2r+n-1)} [x^r][v^n] DC_i`` for i = 0, 1, 2.

    Returns one dict per phase keyed by ``(r, n)``; the window of ``req`` is
    the window of the normalized series.
    """
    bq, bt = req.bound_q, req.bound_t
    wide = SeriesRequest(bq, bt + 3 * bq + 2, ("x", "q", "v", "t"))
    out = []
    for dc in dc_assemble(wide):
        table = {}
        for r, by_r in split_by(dc, "x").items():
            for n, f in split_by(by_r, "v").items():
                g = shift_monomial(f, mono(t=-(2 * r + n - 1)))
                if g.bound_t < bt:
                    raise SeriesError("DC normalization window too small")
                table[(r, n)] = g.with_bounds(bq, bt)
        out.append(table)
    return out
