"""Generating series of the growth-phase blocks H_ij.

A block is a maximal run of consecutive columns whose (upper, lower) profile
phase is constant.  Each block series counts the block as a stand-alone
polyomino: ``u`` marks its first column, ``v`` its last, ``t`` its own
half-perimeter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series_core import (
    ExponentVector,
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    add,
    inverse_pochhammer,
    mono,
    mul,
    pochhammer,
    substitute,
    sum_series,
    split_by,
    gaussian_coefficients,
)
from .stacks_staircases import distinct_partitions, stack_series, staircase_functional


@dataclass(frozen=True)
class PhaseState:
    upper: int
    lower: int

    def __post_init__(self):
        if self.upper not in (0, 1, 2) or self.lower not in (0, 1, 2):
            raise ValueError("phase components are 0, 1 or 2")

    def can_reach(self, other: "PhaseState") -> bool:
        """Phases only move forward: 0 -> 1 -> 2 (and 0 -> 2)."""
        return self.upper <= other.upper and self.lower <= other.lower


def _need(req: SeriesRequest, *names: str) -> SeriesRequest:
    return req.with_active(req.active | set(names))


def swap_uv(f: TruncatedSeries) -> TruncatedSeries:
    """Exchange the roles of u and v."""
    return substitute(f, {"u": mono(v=1), "v": mono(u=1)})


def block_h00_h22(req: SeriesRequest) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``(H_00, H_22)`` with H_00 = T(xt, vt^2, q) and H_22 = T(xt, ut^2, q)."""
    stacks = stack_series(SeriesRequest(req.bound_q, req.bound_t, ("x", "u", "q")))
    x_img = req.m(x=1, t=1)
    h00 = substitute(stacks, {"x": x_img, "u": req.m(v=1, t=2)})
    h22 = substitute(stacks, {"x": x_img, "u": req.m(u=1, t=2)})
    return h00.with_bounds(req.bound_q, req.bound_t), h22.with_bounds(req.bound_q, req.bound_t)


def block_h10_sum(req: SeriesRequest) -> TruncatedSeries:
    """H_10 as the explicit sum over the number of columns m.

    sum_m x^m q^m u v t^{2m+1} (-qvt;q)_{m-1} / ((qvt^2;q)_{m-1} (1 - q^m uvt^2))
    """
    bq, bt = req.bound_q, req.bound_t
    terms = []
    m = 1
    while m <= bq and 2 * m + 1 <= bt:
        term = req.monomial(x=m, q=m, u=1, v=1, t=2 * m + 1)
        term = mul(term, pochhammer(req.m(q=1, v=1, t=1), req.m(q=1), m - 1, bq, bt, coef=-1))
        term = mul(term, inverse_pochhammer(req.m(q=1, v=1, t=2), req.m(q=1), m - 1, bq, bt))
        terms.append(mul(term, req.geometric(q=m, u=1, v=1, t=2)))
        m += 1
    return sum_series(terms, bq, bt)


def h10_functional_rhs(h10: TruncatedSeries, req: SeriesRequest) -> TruncatedSeries:
    """Right side of H10(v) = xquvt^3/(1-quvt^2) + xt^2(1+qvt)/(1-qvt^2) H10(vq)."""
    full = _need(req, "v")
    base = mul(full.monomial(x=1, q=1, u=1, v=1, t=3), full.geometric(q=1, u=1, v=1, t=2))
    factor = mul(full.monomial(x=1, t=2), full.one() + full.monomial(q=1, v=1, t=1))
    factor = mul(factor, full.geometric(q=1, v=1, t=2))
    return add(base, mul(factor, substitute(h10, {"v": mono(v=1, q=1)})))


def _gauss_ext(n: int, k: int) -> tuple[int, ...]:
    if k == 0 and n >= -1:
        return (1,)
    return gaussian_coefficients(n, k)


def block_h10_quadruple(req: SeriesRequest) -> TruncatedSeries:
    """H_10 from the quadruple sum over height h, width m and the two decorations.

    Slow; kept as an independent cross-check on small windows.
    """
    bq, bt = req.bound_q, req.bound_t
    terms: dict[ExponentVector, int] = {}
    for h in range(1, bq + 1):
        for m in range(1, bq // h + 1):
            for i in range(0, m):
                gi = gaussian_coefficients(m - 1, i)
                for j in range(0, bq + 1):
                    gj = _gauss_ext(m - 2 + j, j)
                    base_q = m * h + i * (i + 1) // 2 + j
                    if base_q > bq:
                        break
                    et = 2 * m + 2 * h + i + 2 * j - 1
                    if et > bt:
                        break
                    for a, ca in enumerate(gi):
                        for b, cb in enumerate(gj):
                            eq = base_q + a + b
                            if eq > bq:
                                break
                            key = req.m(x=m, q=eq, u=h, v=h + i + j, t=et)
                            terms[key] = terms.get(key, 0) + ca * cb
    return req.series(terms)


def block_h10(req: SeriesRequest, *, check: bool = True) -> TruncatedSeries:
    """H_10, verified against one unrolling of its functional equation."""
    full = _need(req, "v")
    h10 = block_h10_sum(full)
    if check:
        rhs = h10_functional_rhs(h10, full)
        if not rhs.agrees_with(h10):
            raise SeriesError("H_10 sum does not satisfy its functional equation")
    return req.restrict(h10)


def block_h01_h12_h21(req: SeriesRequest) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """``(H_01, H_12, H_21)``: H_01 = H_10, H_12 = H_21 = H_10 with u and v swapped."""
    h10 = block_h10(_need(req, "u", "v"))
    h12 = swap_uv(h10)
    return req.restrict(h10), req.restrict(h12), req.restrict(h12)


def block_h02_h20(req: SeriesRequest) -> TruncatedSeries:
    """H_02 = H_20 = Pa, the staircase series."""
    return staircase_functional(req)


def _odd_half_perimeter_transform(pa_ij: TruncatedSeries, req: SeriesRequest) -> TruncatedSeries:
    """x^{-1/2} Pa_{i,j}(1, q, t x^{1/2}): each t^p becomes x^{(p-1)/2} t^p."""
    terms: dict[ExponentVector, int] = {}
    for m, c in pa_ij.items():
        p = m.et
        if p % 2 != 1:
            raise SeriesError(f"staircase with even half-perimeter {p}")
        key = req.m(x=(p - 1) // 2, q=m.eq, t=p)
        terms[key] = terms.get(key, 0) + c
    return req.series(terms)


def block_h11a(req: SeriesRequest) -> TruncatedSeries:
    """Oscillating blocks built on a rotated staircase with partition decorations."""
    bq, bt = req.bound_q, req.bound_t
    pa = staircase_functional(SeriesRequest(bq, bt, ("q", "u", "v", "t")))
    parts = []
    ut = {"u": req.m(u=1, t=1)}
    vt = {"u": req.m(v=1, t=1)}
    d_req = SeriesRequest(bq, bt, ("u", "q"))
    for i, pa_i in split_by(pa, "u").items():
        du = substitute(distinct_partitions(i - 1, d_req), ut)
        for j, pa_ij in split_by(pa_i, "v").items():
            dv = substitute(distinct_partitions(j - 1, d_req), vt)
            core = mul(_odd_half_perimeter_transform(pa_ij, req), req.monomial(u=1, v=1))
            parts.append(mul(mul(core, du), dv))
    return sum_series(parts, bq, bt)


def block_h11b(req: SeriesRequest) -> TruncatedSeries:
    """Oscillating blocks built on a rectangle of height >= 2.

    sum_n x^n q^{2n} u^2 v^2 t^{2n+3} D_{n-1}(ut,q) D_{n-1}(vt,q) / (1 - q^n uvt^2)
    """
    bq, bt = req.bound_q, req.bound_t
    d_req = SeriesRequest(bq, bt, ("u", "q"))
    parts = []
    n = 1
    while 2 * n <= bq and 2 * n + 3 <= bt:
        d = distinct_partitions(n - 1, d_req)
        du = substitute(d, {"u": req.m(u=1, t=1)})
        dv = substitute(d, {"u": req.m(v=1, t=1)})
        term = mul(req.monomial(x=n, q=2 * n, u=2, v=2, t=2 * n + 3), mul(du, dv))
        parts.append(mul(term, req.geometric(q=n, u=1, v=1, t=2)))
        n += 1
    return sum_series(parts, bq, bt)


def block_h11(req: SeriesRequest) -> TruncatedSeries:
    """H_11 = H_11a + H_11b."""
    return add(block_h11a(req), block_h11b(req))


def all_blocks(req: SeriesRequest) -> dict[tuple[int, int], TruncatedSeries]:
    """Every H_ij keyed by ``(i, j)``."""
    inner = _need(req, "u", "v")
    h00, h22 = block_h00_h22(inner)
    h10 = block_h10(inner)
    h12 = swap_uv(h10)
    pa = block_h02_h20(inner)
    h11 = block_h11(inner)
    blocks = {
        (0, 0): h00, (2, 2): h22,
        (1, 0): h10, (0, 1): h10,
        (1, 2): h12, (2, 1): h12,
        (0, 2): pa, (2, 0): pa,
        (1, 1): h11,
    }
    return {k: req.restrict(v) for k, v in blocks.items()}
