"""Generating series in (q, t) of the convex polyominoes fixed by a symmetry.

Every constructor takes the requested window ``(bound_q, bound_t)`` and
returns a series reliable on exactly that window.  Quotients by monomials
(``1 / (q^m t^{2m+1})`` and the like) go through :func:`_quotient`, which
refuses to return a series whose window has shrunk below the request.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convex_series import phase_series
from .directed_series import dc_normalized
from .series_core import (
    ExponentVector,
    SeriesError,
    SeriesRequest,
    TruncatedSeries,
    add,
    finalize,
    mono,
    q_binomial,
    mul,
    shift_monomial,
    split_by,
    substitute,
    sum_series,
)
from .stacks_staircases import stack_open, symmetric_stack_column, symmetric_stack_open

QT = ("q", "t")


@dataclass(frozen=True)
class SymmetryClassSeries:
    label: str
    series: TruncatedSeries


def _quotient(f: TruncatedSeries, m: ExponentVector, bound_q: int, bound_t: int) -> TruncatedSeries:
    out = shift_monomial(f, m)
    if out.bound_q < bound_q or out.bound_t < bound_t:
        raise SeriesError(f"monomial quotient by {m} leaves window ({out.bound_q}, {out.bound_t})")
    return out.with_bounds(bound_q, bound_t)


def _scaled(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """f(q^k, t^k)."""
    return substitute(f, {"q": mono(q=k), "t": mono(t=k)})


def _final(f: TruncatedSeries, bound_q: int, bound_t: int) -> TruncatedSeries:
    return finalize(f.with_bounds(bound_q, bound_t))


class _Inputs:
    """Lazily built series shared between several symmetry classes."""

    def __init__(self, bound_q: int, bound_t: int):
        self.bound_q = bound_q
        self.bound_t = bound_t
        self._phases = None

    def phases(self):
        """C_ij in (q, v, t), reliable on the requested window."""
        if self._phases is None:
            self._phases = phase_series(SeriesRequest(self.bound_q, self.bound_t, ("q", "v", "t")))
        return self._phases


def _hexagon_sum(bound_q: int, bound_t: int, decoration) -> TruncatedSeries:
    """sum_h t^{3(2h-1)} q^{3h(h-1)+1} decoration(h), for super-hexagons of radius h."""
    req = SeriesRequest(bound_q, bound_t, QT)
    parts = []
    h = 1
    while 3 * h * (h - 1) + 1 <= bound_q and 3 * (2 * h - 1) <= bound_t:
        core = req.monomial(t=3 * (2 * h - 1), q=3 * h * (h - 1) + 1)
        parts.append(mul(core, decoration(h, req)))
        h += 1
    return sum_series(parts, bound_q, bound_t)


def _pseudo_hexagon_sum(bound_q: int, bound_t: int, decoration) -> TruncatedSeries:
    """sum_h t^{6h} q^{3h^2} decoration(h), for vertex-centred pseudo-hexagons."""
    req = SeriesRequest(bound_q, bound_t, QT)
    parts = []
    h = 1
    while 3 * h * h <= bound_q and 6 * h <= bound_t:
        parts.append(mul(req.monomial(t=6 * h, q=3 * h * h), decoration(h, req)))
        h += 1
    return sum_series(parts, bound_q, bound_t)


# -- reflections ---------------------------------------------------------------


def fix_vertical(bound_q: int, bound_t: int, inputs: _Inputs | None = None) -> TruncatedSeries:
    """Polyominoes symmetric in a vertical axis through a central column.

    The left half including the central column ends in phase 00, 10, 01 or 11;
    each half is doubled and the central column of size m counted once.
    """
    inputs = inputs or _Inputs(bound_q, bound_t)
    c = inputs.phases()
    half = sum_series([c[(0, 0)], c[(1, 0)], c[(0, 1)], c[(1, 1)]], bound_q, bound_t)
    parts = []
    for m, k_m in split_by(half, "v").items():
        if m > bound_q or 2 * m + 1 > bound_t:
            break
        parts.append(_quotient(_scaled(k_m, 2), mono(q=-m, t=-(2 * m + 1)), bound_q, bound_t))
    return _final(sum_series(parts, bound_q, bound_t), bound_q, bound_t)


# -- rotations -----------------------------------------------------------------


def fix_rot60(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Super-hexagons with six equal stack decorations."""
    return _final(
        _hexagon_sum(bound_q, bound_t, lambda h, req: stack_open(h - 1, req, x=req.m(t=6), q=req.m(q=6))),
        bound_q,
        bound_t,
    )


def _centred_half(c, n: int, bound_q: int, bound_t: int) -> TruncatedSeries | None:
    """(C_00,n + 2 C_01,n + C_11,n + 2 C_02,n)(q^2, t^2)."""
    parts = []
    for state, weight in (((0, 0), 1), ((0, 1), 2), ((1, 1), 1), ((0, 2), 2)):
        coeff = split_by(c[state], "v").get(n)
        if coeff is not None:
            parts.append(coeff.scale(weight))
    if not parts:
        return None
    return _scaled(sum_series(parts, bound_q, bound_t), 2)


def fix_rot180(bound_q: int, bound_t: int, inputs: _Inputs | None = None) -> TruncatedSeries:
    """Half-turn symmetric polyominoes.

    The left half including the central column of size n is doubled; an even
    central column puts the centre on an edge midpoint (three edge
    directions), an odd one on a cell centre.
    """
    inputs = inputs or _Inputs(bound_q, bound_t)
    c = inputs.phases()
    edge, cell = [], []
    n = 1
    while n <= bound_q and 2 * n + 1 <= bound_t:
        half = _centred_half(c, n, bound_q, bound_t)
        if half is not None:
            # central column counted once: area n, n shared edges on each side removed
            piece = _quotient(half, mono(q=-n, t=-(2 * n + 1)), bound_q, bound_t)
            (edge if n % 2 == 0 else cell).append(piece)
        n += 1
    total = add(sum_series(edge, bound_q, bound_t).scale(3), sum_series(cell, bound_q, bound_t))
    return _final(total, bound_q, bound_t)


# -- two-generator subgroups ---------------------------------------------------------


def fix_d6(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Super-hexagons with six equal symmetric stacks."""
    return _final(
        _hexagon_sum(
            bound_q, bound_t, lambda h, req: symmetric_stack_open(h - 1, req, x=req.m(t=6), q=req.m(q=6))
        ),
        bound_q,
        bound_t,
    )


def fix_f31(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Rotation by 2pi/3 combined with a reflection through a cell-cell diagonal."""

    def ts0(n, req):
        return symmetric_stack_open(n, req, x=req.m(t=3), q=req.m(q=3))

    centred = _hexagon_sum(bound_q, bound_t, lambda h, req: mul(ts0(h - 1, req), ts0(h - 1, req)))
    vertex = _pseudo_hexagon_sum(bound_q, bound_t, lambda h, req: mul(ts0(h - 1, req), ts0(h, req)))
    return _final(add(centred, vertex.scale(2)), bound_q, bound_t)


# -- horizontal reflection -----------------------------------------------------


def _ts0(n: int, req: SeriesRequest, k: int = 1) -> TruncatedSeries:
    """TS0_n(t^k, q^k); indices below -1 mean an empty side and give 1."""
    if n < -1:
        return req.one()
    return symmetric_stack_open(n, req, x=req.m(t=k), q=req.m(q=k))


def _ts(n: int, req: SeriesRequest) -> TruncatedSeries:
    """TS_n(t, q): x at 1, each column's t carried by the substitution x -> xt."""
    return symmetric_stack_column(n, req, x=req.m(t=1), q=req.m(q=1))


def arrowhead_base(bound_q: int, bound_t: int) -> TruncatedSeries:
    """B(s) at x = 1: a triangle of side n, possibly followed by a symmetric stack."""
    req = SeriesRequest(bound_q, bound_t, ("q", "s", "t"))
    parts = [req.monomial(s=1, q=1, t=3)]
    n = 2
    while n * (n + 1) // 2 <= bound_q and 3 * n <= bound_t:
        parts.append(mul(req.monomial(s=n, q=n * (n + 1) // 2, t=3 * n), _ts0(n - 3, req)))
        n += 1
    return sum_series(parts, bound_q, bound_t)


def arrowheads(bound_q: int, bound_t: int) -> TruncatedSeries:
    """A(s) = B(s) + s^2 q^3 t^4 / (1 - s q^2) (A(1) - A(s q^2)), at x = 1.

    Solved by iteration from 0; each pass fixes at least one more q-degree.
    """
    req = SeriesRequest(bound_q, bound_t, ("q", "s", "t"))
    base = arrowhead_base(bound_q, bound_t)
    kernel = mul(req.monomial(s=2, q=3, t=4), req.geometric(s=1, q=2))
    at_one = {"s": ExponentVector()}
    shift = {"s": mono(s=1, q=2)}
    current = req.zero()
    for _ in range(bound_q + bound_t + 2):
        nxt = add(base, mul(kernel, substitute(current, at_one) - substitute(current, shift)))
        nxt = nxt.with_bounds(bound_q, bound_t)
        if nxt == current:
            return current
        current = nxt
    raise SeriesError("arrowhead iteration did not converge")


def _s_sum(a_parts: dict[int, TruncatedSeries], lo: int, top, h: int, req: SeriesRequest) -> TruncatedSeries:
    """sum_{m >= lo} [top(m) choose h]_{q^2} A_m."""
    parts = []
    for m, a_m in a_parts.items():
        if m >= lo:
            parts.append(mul(q_binomial(top(m), h, mono(q=2), req.bound_q, req.bound_t), a_m))
    return sum_series(parts, req.bound_q, req.bound_t)


def fix_horizontal_parts(bound_q: int, bound_t: int) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    """``(S_a, S_b, S_c)`` at x = 1: with an arrowhead, with an oscillating part but
    no arrowhead, and without an oscillating part."""
    req = SeriesRequest(bound_q, bound_t, QT)
    a_parts = split_by(arrowheads(bound_q, bound_t), "s")

    sa = []
    h = 0
    while h * (h + 1) <= bound_q and 2 * h + 2 <= bound_t:
        lead = req.monomial(q=h * (h + 1), t=2 * h + 2)
        sa.append(mul(mul(lead, _ts(2 * h + 2, req)), _s_sum(a_parts, h + 1, lambda m: m - 1, h, req)))
        if h >= 1:
            lead = req.monomial(q=h * (h + 1), t=2 * h + 3)
            sa.append(mul(mul(lead, _ts(2 * h + 1, req)), _s_sum(a_parts, h, lambda m: m, h, req)))
        h += 1

    sb = []
    n = 0
    while n * (n + 1) // 2 <= bound_q and 3 * n <= bound_t:
        head = req.monomial(q=n * (n + 1) // 2, t=3 * n)
        k = 1
        while 2 * k * n <= bound_q and 4 * k <= bound_t:
            if n >= 1:
                inner = sum_series(
                    [
                        mul(
                            req.monomial(t=2 * j + 2, q=j * (j + 1)),
                            mul(q_binomial(n - 1, j, mono(q=2), bound_q, bound_t), _ts(2 * k + 2 * j + 2, req)),
                        )
                        for j in range(n)
                    ],
                    bound_q,
                    bound_t,
                )
                mid = mul(req.monomial(q=2 * k * n, t=4 * k), _ts0(n + 2 * k - 3, req))
                sb.append(mul(mul(head, mid), inner))
            inner = sum_series(
                [
                    mul(
                        req.monomial(t=2 * j + 2, q=j * (j + 1)),
                        mul(q_binomial(n, j, mono(q=2), bound_q, bound_t), _ts(2 * k + 2 * j + 1, req)),
                    )
                    for j in range(n + 1)
                ],
                bound_q,
                bound_t,
            )
            mid = mul(req.monomial(q=2 * k * (n + 1), t=4 * k + 1), _ts0(n + 2 * k - 3, req))
            sb.append(mul(mul(head, mid), inner))
            k += 1
        n += 1

    sc = []
    h = 1
    while h <= bound_q and 2 * h + 1 <= bound_t:
        sc.append(mul(mul(req.monomial(t=2 * h), _ts(h, req)), _ts0(h - 3, req)))
        h += 1

    return tuple(sum_series(p, bound_q, bound_t) for p in (sa, sb, sc))


def fix_horizontal(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Polyominoes symmetric in the horizontal axis: S_a + S_b + S_c."""
    sa, sb, sc = fix_horizontal_parts(bound_q, bound_t)
    return _final(sum_series([sa, sb, sc], bound_q, bound_t), bound_q, bound_t)


# -- rotation by 2pi/3 ----------------------------------------------------------


def _third(bound: int) -> int:
    """Smallest window W with 3W + 2 >= bound."""
    return max(0, -(-(bound - 2) // 3))


class _Decorations:
    """Directed decorations in unscaled (q, t); the caller substitutes q^3, t^3."""

    def __init__(self, bound_q: int, bound_t: int):
        self.bq = _third(bound_q)
        self.bt = _third(bound_t)
        self.req = SeriesRequest(self.bq, self.bt, QT)
        self.dc = dc_normalized(self.req)

    def get(self, i: int, r: int, n: int) -> TruncatedSeries:
        return self.dc[i].get((r, n), self.req.zero())

    def upto(self, i: int, h: int, n: int) -> TruncatedSeries:
        """sum_{r=1}^h DC_{i,r,n}."""
        return sum_series([self.get(i, r, n) for r in range(1, h + 1)], self.bq, self.bt)

    def pair_sum(self, h_left: int, h_right: int, pairs) -> TruncatedSeries:
        """sum_l q^{-l} sum over (i, j, weight) of weight * F_{i,<=h_left,l} F_{j,<=h_right,l}."""
        parts = []
        for l in range(1, self.bq + 1):
            left = [self.upto(i, h_left, l) for i in range(3)]
            right = [self.upto(i, h_right, l) for i in range(3)]
            for i, j, w in pairs:
                if left[i] and right[j]:
                    parts.append(mul(shift_monomial(left[i], mono(q=-l)), right[j]).scale(w))
        return sum_series(parts, self.bq, self.bt)

    def sector(self, h: int) -> TruncatedSeries:
        """B_h: admissible decorations of one sector over a hexagon of side h."""
        req = self.req
        parts = []
        for r in range(1, h):
            parts.append(add(req.monomial(q=r, t=1), self.get(1, r, 1)).scale(h - r))
            parts.append(self.get(2, r, 1))
            for j in range(2, self.bq + 1):
                total = sum_series([self.get(i, r, j) for i in range(3)], self.bq, self.bt)
                if total:
                    parts.append(mul(req.monomial(t=j - 1), total))
        return sum_series(parts, self.bq, self.bt)


_P1_PAIRS = ((0, 0, 1), (0, 1, 2), (0, 2, 2), (1, 1, 1))
_Q1_PAIRS = ((0, 0, 1), (0, 1, 1), (0, 2, 1), (1, 1, 1), (1, 0, 1), (2, 0, 1))


def fix_rot120_parts(bound_q: int, bound_t: int) -> dict[str, TruncatedSeries]:
    """``P1, P3, Q1, Q3``: cell-centred and vertex-centred, unequal and equal extents."""
    deco = _Decorations(bound_q, bound_t)

    def to(n, req):
        return stack_open(n, req, x=req.m(t=3), q=req.m(q=3))

    def scaled(f, req):
        return _scaled(f, 3).with_bounds(req.bound_q, req.bound_t)

    p1 = _hexagon_sum(bound_q, bound_t, lambda h, req: scaled(deco.pair_sum(h, h, _P1_PAIRS), req))

    def p3_term(h, req):
        o = to(h - 1, req)
        rest = add(add(mul(o, o), o.scale(-4)), req.one().scale(4))
        return add(scaled(deco.sector(h).scale(4), req), rest)

    p3 = _hexagon_sum(bound_q, bound_t, p3_term)
    q1 = _pseudo_hexagon_sum(bound_q, bound_t, lambda h, req: scaled(deco.pair_sum(h + 1, h, _Q1_PAIRS), req)).scale(2)

    def q3_term(h, req):
        a, b = to(h - 1, req), to(h, req)
        sectors = scaled(add(deco.sector(h), deco.sector(h + 1)).scale(2), req)
        rest = sum_series([req.one().scale(4), a.scale(-2), b.scale(-2), mul(a, b)], req.bound_q, req.bound_t)
        return add(sectors, rest)

    q3 = _pseudo_hexagon_sum(bound_q, bound_t, q3_term).scale(2)
    return {"P1": p1, "P3": p3, "Q1": q1, "Q3": q3}


def fix_rot120(bound_q: int, bound_t: int) -> TruncatedSeries:
    """2 P1 + P3 + 2 Q1 + Q3."""
    p = fix_rot120_parts(bound_q, bound_t)
    total = sum_series([p["P1"].scale(2), p["P3"], p["Q1"].scale(2), p["Q3"]], bound_q, bound_t)
    return _final(total, bound_q, bound_t)


# -- rotation by 2pi/3 with a reflection -----------------------------------------


def fix_h31(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Rotation by 2pi/3 with the vertical reflection: 2 R1 + R3.

    R1 pairs each directed decoration with its own mirror image across the
    shared column, so only decorations ending in phase 0 or 1 qualify.
    """
    # a decoration of area A ending in a column of l cells adds 6A - 3l >= 3l cells
    dq = max(0, -(-(2 * bound_q - 5) // 6))
    dt = max(0, -(-(bound_t - 5) // 6))
    dc = dc_normalized(SeriesRequest(dq, dt, QT))
    mirrored: dict[int, list[TruncatedSeries]] = {}
    for table in dc[:2]:
        for (r, l), f in table.items():
            if 3 * l <= bound_q:
                piece = _quotient(_scaled(f, 6), mono(q=-3 * l), bound_q, bound_t)
                mirrored.setdefault(r, []).append(piece)

    def r1_term(h, req):
        return sum_series([f for r in range(1, h + 1) for f in mirrored.get(r, [])], bound_q, bound_t)

    r1 = _hexagon_sum(bound_q, bound_t, r1_term)
    r3 = fix_rot60(bound_q, bound_t)
    return _final(add(r1.scale(2), r3), bound_q, bound_t)


# -- the Klein four-group generated by h and v -----------------------------------


def h_symmetric_oscillating(bound_q: int, bound_t: int) -> TruncatedSeries:
    """HS_11(u, v): h-symmetric oscillating blocks, u and v marking the end columns.

    HS(v) = quvt^3/(1-quvt^2) + qvt^3 HS(vq) + t/(qv) (HS(vq) - [v^1] HS(vq) v),
    solved by iteration; each pass fixes one more t-degree.
    """
    req = SeriesRequest(bound_q, bound_t, ("q", "u", "v", "t"))
    base = mul(req.monomial(q=1, u=1, v=1, t=3), req.geometric(q=1, u=1, v=1, t=2))
    grow = req.monomial(q=1, v=1, t=3)
    shift = {"v": mono(v=1, q=1)}
    current = req.zero()
    for _ in range(bound_q + bound_t + 2):
        shifted = substitute(current, shift)
        by_v = split_by(shifted, "v")
        shrink_terms = {}
        for n, f in by_v.items():
            if n >= 2:
                for m, c in f.items():
                    shrink_terms[m + mono(v=n - 1, q=-1, t=1)] = c
        shrink = req.series(shrink_terms)
        nxt = sum_series([base, mul(grow, shifted), shrink], bound_q, bound_t)
        if nxt == current:
            return current
        current = nxt
    raise SeriesError("HS_11 iteration did not converge")


def fix_d23(bound_q: int, bound_t: int) -> TruncatedSeries:
    """Symmetric under both the horizontal and the vertical reflection.

    The left half is itself h-symmetric and ends in phase 00 or 11.
    """
    half_q, half_t = _half(bound_q), _half(bound_t)
    req = SeriesRequest(half_q, half_t, QT)
    hs = split_by(h_symmetric_oscillating(half_q, half_t), "u")
    ends = []
    for i in range(1, half_q + 1):
        if 2 * i + 1 > half_t:
            break
        cs00 = mul(req.monomial(t=2 * i), _ts(i, req))
        ends.append((i, cs00))
    by_last: dict[int, list[TruncatedSeries]] = {}
    for i, cs00 in ends:
        by_last.setdefault(i, []).append(cs00)
        block = hs.get(i - 1)
        if i >= 2 and block is not None:
            glued = mul(shift_monomial(cs00, mono(t=-(2 * i - 2))), block)
            for n, f in split_by(glued, "v").items():
                by_last.setdefault(n, []).append(f)
    parts = []
    for n, fs in sorted(by_last.items()):
        if n > bound_q or 2 * n + 1 > bound_t:
            continue
        k_n = _scaled(sum_series(fs, half_q, half_t), 2)
        parts.append(_quotient(k_n, mono(q=-n, t=-(2 * n + 1)), bound_q, bound_t))
    return _final(sum_series(parts, bound_q, bound_t), bound_q, bound_t)


def _half(bound: int) -> int:
    """Window W such that a half of size W doubles to cover ``bound``."""
    return bound


# -- everything at once ------------------------------------------------------------

FIX_LABELS = ("id", "h", "v", "r", "r2", "r3", "D6", "F31", "H31", "D23")


def all_fix_series(bound_q: int, bound_t: int) -> dict[str, TruncatedSeries]:
    """Every fixed-point series on one window, sharing the convex phase series."""
    inputs = _Inputs(bound_q, bound_t)
    total = sum_series(
        [f.with_bounds(bound_q, bound_t) for f in inputs.phases().values()], bound_q, bound_t
    )
    total = _final(substitute(total, {"v": ExponentVector()}), bound_q, bound_t)
    return {
        "id": total,
        "h": fix_horizontal(bound_q, bound_t),
        "v": fix_vertical(bound_q, bound_t, inputs),
        "r": fix_rot60(bound_q, bound_t),
        "r2": fix_rot120(bound_q, bound_t),
        "r3": fix_rot180(bound_q, bound_t, inputs),
        "D6": fix_d6(bound_q, bound_t),
        "F31": fix_f31(bound_q, bound_t),
        "H31": fix_h31(bound_q, bound_t),
        "D23": fix_d23(bound_q, bound_t),
    }
