"""Truncated multivariate formal power series with exact integer coefficients.

Every generating function in the package is a :class:`TruncatedSeries` in
the six variables ``x, q, u, v, s, t``.  A series carries two reliability
bounds, ``bound_q`` and ``bound_t``: a coefficient is known exactly whenever
its q-exponent is at most ``bound_q`` *and* its t-exponent is at most
``bound_t``.  Terms outside that window are never stored.

Exponents are packed into a single Python int (16 bits per variable, biased)
so that monomial multiplication is one integer addition.
"""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

VARIABLES = ("x", "q", "u", "v", "s", "t")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

_WIDTH = 16
_MASK = (1 << _WIDTH) - 1
_BIAS = 1 << (_WIDTH - 1)
_PACKED_BIAS = sum(_BIAS << (_WIDTH * i) for i in range(len(VARIABLES)))
_Q_SHIFT = _WIDTH * _INDEX["q"]
_T_SHIFT = _WIDTH * _INDEX["t"]
EXP_MIN = -_BIAS
EXP_MAX = _BIAS - 1


class SeriesError(ArithmeticError):
    """Raised for contract violations in series arithmetic."""


class ExponentOverflow(SeriesError):
    pass


class InvariantViolation(SeriesError):
    """A user-facing series failed the nonnegativity gate."""


class ExponentVector(NamedTuple):
    ex: int = 0
    eq: int = 0
    eu: int = 0
    ev: int = 0
    es: int = 0
    et: int = 0

    def __add__(self, other):  # type: ignore[override]
        return ExponentVector(*(a + b for a, b in zip(self, other)))

    def scaled(self, k: int) -> "ExponentVector":
        return ExponentVector(*(k * a for a in self))


def mono(**exps: int) -> ExponentVector:
    """``mono(q=2, t=3)`` -> ExponentVector for q^2 t^3."""
    vec = [0] * len(VARIABLES)
    for name, e in exps.items():
        vec[_INDEX[name]] = e
    return ExponentVector(*vec)


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not EXP_MIN <= e <= EXP_MAX:
            raise ExponentOverflow(f"exponent {e} out of range")
        key |= (e + _BIAS) << (_WIDTH * i)
    return key


def _unpack(key: int) -> ExponentVector:
    return ExponentVector(
        *(((key >> (_WIDTH * i)) & _MASK) - _BIAS for i in range(len(VARIABLES)))
    )


def _qdeg(key: int) -> int:
    return ((key >> _Q_SHIFT) & _MASK) - _BIAS


def _tdeg(key: int) -> int:
    return ((key >> _T_SHIFT) & _MASK) - _BIAS


def _vardeg(key: int, index: int) -> int:
    return ((key >> (_WIDTH * index)) & _MASK) - _BIAS


class TruncatedSeries:
    """Immutable sparse series; ``terms`` maps packed exponents to ints.

    Construct from a mapping ``{ExponentVector: coefficient}`` or use the
    helpers :meth:`zero`, :meth:`one`, :meth:`monomial`.
    """

    __slots__ = ("_terms", "bound_q", "bound_t", "_ranges")

    def __init__(
        self,
        terms: Mapping[ExponentVector | tuple, int] | None = None,
        bound_q: int = 0,
        bound_t: int = 0,
    ):
        if bound_q < 0 or bound_t < 0:
            raise SeriesError(f"negative reliability window ({bound_q}, {bound_t})")
        packed: dict[int, int] = {}
        for exps, c in (terms or {}).items():
            if not c:
                continue
            key = _pack(exps)
            if _qdeg(key) > bound_q or _tdeg(key) > bound_t:
                continue
            packed[key] = packed.get(key, 0) + c
        self._init(packed, bound_q, bound_t)

    def _init(self, packed: dict[int, int], bound_q: int, bound_t: int) -> None:
        self._terms = {k: c for k, c in packed.items() if c}
        self.bound_q = bound_q
        self.bound_t = bound_t
        self._ranges = None

    @classmethod
    def _raw(cls, packed: dict[int, int], bound_q: int, bound_t: int) -> "TruncatedSeries":
        if bound_q < 0 or bound_t < 0:
            raise SeriesError(f"negative reliability window ({bound_q}, {bound_t})")
        obj = cls.__new__(cls)
        obj._init(
            {k: c for k, c in packed.items() if _qdeg(k) <= bound_q and _tdeg(k) <= bound_t},
            bound_q,
            bound_t,
        )
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, bound_q: int, bound_t: int) -> "TruncatedSeries":
        return cls._raw({}, bound_q, bound_t)

    @classmethod
    def one(cls, bound_q: int, bound_t: int) -> "TruncatedSeries":
        return cls._raw({_PACKED_BIAS: 1}, bound_q, bound_t)

    @classmethod
    def monomial(
        cls, m: ExponentVector, bound_q: int, bound_t: int, coef: int = 1
    ) -> "TruncatedSeries":
        return cls._raw({_pack(m): coef}, bound_q, bound_t)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[ExponentVector, int]:
        return {_unpack(k): c for k, c in self._terms.items()}

    def items(self):
        for k, c in self._terms.items():
            yield _unpack(k), c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, m: ExponentVector | tuple) -> int:
        return self._terms.get(_pack(m), 0)

    def valuation(self, var: str) -> int:
        """Smallest exponent of ``var`` present (``bound + 1`` when empty)."""
        lo, _ = self._range(_INDEX[var])
        return lo

    def _range(self, index: int) -> tuple[int, int]:
        if self._ranges is None:
            ranges = []
            for i in range(len(VARIABLES)):
                degs = [_vardeg(k, i) for k in self._terms]
                if degs:
                    ranges.append((min(degs), max(degs)))
                else:
                    fill = {1: self.bound_q + 1, 5: self.bound_t + 1}.get(i, 0)
                    ranges.append((fill, fill))
            self._ranges = ranges
        return self._ranges[index]

    def with_bounds(self, bound_q: int, bound_t: int) -> "TruncatedSeries":
        """Narrow the reliability window (widening is never allowed)."""
        if bound_q > self.bound_q or bound_t > self.bound_t:
            raise SeriesError("cannot widen a reliability window")
        return TruncatedSeries._raw(self._terms, bound_q, bound_t)

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Termwise equality on the common reliability window."""
        bq = min(self.bound_q, other.bound_q)
        bt = min(self.bound_t, other.bound_t)
        return self.with_bounds(bq, bt)._terms == other.with_bounds(bq, bt)._terms

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self._terms == other._terms
            and self.bound_q == other.bound_q
            and self.bound_t == other.bound_t
        )

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self.bound_q, self.bound_t))

    def __repr__(self) -> str:
        head = " + ".join(_format_term(m, c) for m, c in sorted_terms(self)[:8])
        more = " + ..." if len(self) > 8 else ""
        return f"TruncatedSeries({head or '0'}{more}; q<={self.bound_q}, t<={self.bound_t})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.monomial(ExponentVector(), self.bound_q, self.bound_t, other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw({k: -c for k, c in self._terms.items()}, self.bound_q, self.bound_t)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def scale(self, k: int) -> "TruncatedSeries":
        return TruncatedSeries._raw({key: k * c for key, c in self._terms.items()}, self.bound_q, self.bound_t)

    def exact_div(self, k: int) -> "TruncatedSeries":
        """Divide every coefficient by ``k``; raises if any is not divisible."""
        out = {}
        for key, c in self._terms.items():
            quo, rem = divmod(c, k)
            if rem:
                raise SeriesError(f"coefficient {c} at {_unpack(key)} not divisible by {k}")
            out[key] = quo
        return TruncatedSeries._raw(out, self.bound_q, self.bound_t)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum on the intersection of the two windows."""
    out = dict(a._terms)
    for k, c in b._terms.items():
        out[k] = out.get(k, 0) + c
    return TruncatedSeries._raw(out, min(a.bound_q, b.bound_q), min(a.bound_t, b.bound_t))


def sum_series(items: Iterable[TruncatedSeries], bound_q: int, bound_t: int) -> TruncatedSeries:
    """Sum of many series, accumulated in place, clipped to the given window."""
    out: dict[int, int] = {}
    bq, bt = bound_q, bound_t
    for s in items:
        bq = min(bq, s.bound_q)
        bt = min(bt, s.bound_t)
        for k, c in s._terms.items():
            out[k] = out.get(k, 0) + c
    return TruncatedSeries._raw(out, bq, bt)


def _check_overflow(a: TruncatedSeries, b: TruncatedSeries) -> None:
    for i in range(len(VARIABLES)):
        lo_a, hi_a = a._range(i)
        lo_b, hi_b = b._range(i)
        if lo_a + lo_b < EXP_MIN or hi_a + hi_b > EXP_MAX:
            raise ExponentOverflow(f"product exponent of {VARIABLES[i]} out of range")


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product.

    The resulting window accounts for operand valuations, so a Laurent factor
    (negative exponents) shrinks it only as much as it must.  For series with
    nonnegative exponents the window is at least the smaller operand window.
    """
    vqa, vqb = a.valuation("q"), b.valuation("q")
    vta, vtb = a.valuation("t"), b.valuation("t")
    bq = min(a.bound_q + vqb, b.bound_q + vqa, max(a.bound_q, b.bound_q))
    bt = min(a.bound_t + vtb, b.bound_t + vta, max(a.bound_t, b.bound_t))
    if bq < 0 or bt < 0:
        raise SeriesError("product has an empty reliability window")
    if not a._terms or not b._terms:
        return TruncatedSeries._raw({}, bq, bt)
    _check_overflow(a, b)
    if len(a._terms) > len(b._terms):
        a, b = b, a
    inner = sorted(((_qdeg(k), _tdeg(k), k, c) for k, c in b._terms.items()))
    inner_q = [row[0] for row in inner]
    out: dict[int, int] = {}
    get = out.get
    for ka, ca in a._terms.items():
        lim_q = bq - _qdeg(ka)
        lim_t = bt - _tdeg(ka)
        stop = bisect_right(inner_q, lim_q)
        base = ka - _PACKED_BIAS
        for i in range(stop):
            _, tb, kb, cb = inner[i]
            if tb > lim_t:
                continue
            key = base + kb
            out[key] = get(key, 0) + ca * cb
    return TruncatedSeries._raw(out, bq, bt)


def power(a: TruncatedSeries, n: int) -> TruncatedSeries:
    result = TruncatedSeries.one(a.bound_q, a.bound_t)
    for _ in range(n):
        result = mul(result, a)
    return result


def _positive_weight(m: ExponentVector) -> bool:
    return m.eq >= 0 and m.et >= 0 and (m.eq > 0 or m.et > 0)


def invert_one_minus(m: ExponentVector, bound_q: int, bound_t: int, coef: int = 1) -> TruncatedSeries:
    """``1 / (1 - coef * m)`` expanded as a geometric series."""
    m = ExponentVector(*m)
    if not _positive_weight(m):
        raise SeriesError(f"1/(1 - {m}) does not converge q,t-adically")
    out = {}
    k = 0
    c = 1
    while k * m.eq <= bound_q and k * m.et <= bound_t:
        out[_pack(m.scaled(k))] = c
        k += 1
        c *= coef
    return TruncatedSeries._raw(out, bound_q, bound_t)


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series whose constant term is 1.

    Every other term must have positive (q, t)-weight so that the geometric
    expansion of ``1 / (1 - g)`` terminates.
    """
    one_key = _PACKED_BIAS
    if f._terms.get(one_key) != 1:
        raise SeriesError("reciprocal needs constant term 1")
    g = {}
    for k, c in f._terms.items():
        if k == one_key:
            continue
        if _qdeg(k) < 0 or _tdeg(k) < 0 or (_qdeg(k) == 0 and _tdeg(k) == 0):
            raise SeriesError("reciprocal needs positive-weight perturbation")
        g[k] = -c
    neg = TruncatedSeries._raw(g, f.bound_q, f.bound_t)
    result = TruncatedSeries.one(f.bound_q, f.bound_t)
    term = result
    while term:
        term = mul(term, neg)
        result = add(result, term)
    return result


def substitute(f: TruncatedSeries, rules: Mapping[str, ExponentVector]) -> TruncatedSeries:
    """Simultaneous monomial substitution ``var -> monomial``.

    Rule monomials must have nonnegative exponents.  The new window is the
    largest rectangle that provably excludes every term that was outside the
    old one (assuming nonnegative exponents on the dropped terms).
    """
    images = [ExponentVector(*rules[name]) if name in rules else mono(**{name: 1}) for name in VARIABLES]
    for img in images:
        if any(e < 0 for e in img):
            raise SeriesError("substitution monomials must have nonnegative exponents")
    q_img, t_img = images[_INDEX["q"]], images[_INDEX["t"]]
    inf = float("inf")
    # lowest image of a term dropped for exceeding bound_q / bound_t
    q_miss = ((f.bound_q + 1) * q_img.eq, (f.bound_q + 1) * q_img.et)
    t_miss = ((f.bound_t + 1) * t_img.eq, (f.bound_t + 1) * t_img.et)
    bq, bt = inf, inf
    for miss_q, miss_t in (q_miss, t_miss):
        if miss_q > 0:
            bq = min(bq, miss_q - 1)
        elif miss_t > 0:
            bt = min(bt, miss_t - 1)
        else:
            raise SeriesError("substitution collapses an unbounded direction")
    if bq == inf:
        bq = max(f.bound_q, max((_qdeg(k) for k in _image_keys(f, images)), default=0))
    if bt == inf:
        bt = max(f.bound_t, max((_tdeg(k) for k in _image_keys(f, images)), default=0))
    out: dict[int, int] = {}
    for key, c in f._terms.items():
        new = [0] * len(VARIABLES)
        for i, img in enumerate(images):
            e = _vardeg(key, i)
            if e:
                for j, ej in enumerate(img):
                    new[j] += e * ej
        nk = _pack(new)
        out[nk] = out.get(nk, 0) + c
    return TruncatedSeries._raw(out, int(bq), int(bt))


def _image_keys(f: TruncatedSeries, images) -> Iterable[int]:
    for key in f._terms:
        new = [0] * len(VARIABLES)
        for i, img in enumerate(images):
            e = _vardeg(key, i)
            for j, ej in enumerate(img):
                new[j] += e * ej
        yield _pack(new)


def extract_coeff(f: TruncatedSeries, var: str, n: int) -> TruncatedSeries:
    """``[var^n] f`` as a series in the remaining variables."""
    if n < 0:
        raise SeriesError("extraction index must be nonnegative")
    idx = _INDEX[var]
    if var == "q" and n > f.bound_q or var == "t" and n > f.bound_t:
        raise SeriesError(f"[{var}^{n}] lies outside the reliability window")
    shift = (n) << (_WIDTH * idx)
    out = {k - shift: c for k, c in f._terms.items() if _vardeg(k, idx) == n}
    return TruncatedSeries._raw(out, f.bound_q, f.bound_t)


def split_by(f: TruncatedSeries, var: str) -> dict[int, TruncatedSeries]:
    """All nonzero coefficient series ``{n: [var^n] f}`` in one pass."""
    idx = _INDEX[var]
    buckets: dict[int, dict[int, int]] = {}
    for k, c in f._terms.items():
        n = _vardeg(k, idx)
        buckets.setdefault(n, {})[k - (n << (_WIDTH * idx))] = c
    return {n: TruncatedSeries._raw(d, f.bound_q, f.bound_t) for n, d in sorted(buckets.items())}


def shift_monomial(f: TruncatedSeries, m: ExponentVector) -> TruncatedSeries:
    """Multiply by the (possibly Laurent) monomial ``m``; the window moves with it."""
    m = ExponentVector(*m)
    bq, bt = f.bound_q + m.eq, f.bound_t + m.et
    if bq < 0 or bt < 0:
        raise SeriesError(f"shift by {m} leaves no reliable window")
    _check_overflow(f, TruncatedSeries.monomial(m, max(bq, m.eq), max(bt, m.et)))
    delta = _pack(m) - _PACKED_BIAS
    return TruncatedSeries._raw({k + delta: c for k, c in f._terms.items()}, bq, bt)


def finalize(f: TruncatedSeries, *, nonneg_coefficients: bool = True) -> TruncatedSeries:
    """Gate for user-facing series: no negative exponents (or coefficients)."""
    for k, c in f._terms.items():
        e = _unpack(k)
        if any(x < 0 for x in e):
            raise InvariantViolation(f"negative exponent in final series: {e}")
        if nonneg_coefficients and c < 0:
            raise InvariantViolation(f"negative coefficient {c} at {e}")
    return f


@lru_cache(maxsize=None)
def _gauss_poly(n: int, k: int) -> tuple[int, ...]:
    """Coefficient list of the Gaussian binomial [n choose k]_q."""
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    # [n,k] = [n-1,k-1] + q^k [n-1,k]
    a = _gauss_poly(n - 1, k - 1)
    b = _gauss_poly(n - 1, k)
    out = [0] * max(len(a), len(b) + k)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def gaussian_coefficients(n: int, k: int) -> tuple[int, ...]:
    return _gauss_poly(n, k)


def q_binomial(
    top: int, bottom: int, q_var: ExponentVector, bound_q: int, bound_t: int | None = None
) -> TruncatedSeries:
    """Gaussian binomial ``[top choose bottom]`` in the monomial ``q_var``."""
    q_var = ExponentVector(*q_var)
    if bound_t is None:
        bound_t = 0
    out = {}
    for i, c in enumerate(_gauss_poly(top, bottom)):
        out[_pack(q_var.scaled(i))] = c
    return TruncatedSeries._raw(out, bound_q, bound_t)


def pochhammer(
    a: ExponentVector, q_step: ExponentVector, n: int, bound_q: int, bound_t: int, coef: int = 1
) -> TruncatedSeries:
    """``(coef*a; q_step)_n = prod_{i<n} (1 - coef * a * q_step^i)``."""
    if n < 0:
        raise SeriesError("pochhammer length must be nonnegative")
    a, q_step = ExponentVector(*a), ExponentVector(*q_step)
    result = TruncatedSeries.one(bound_q, bound_t)
    for i in range(n):
        factor = TruncatedSeries._raw(
            {_PACKED_BIAS: 1, _pack(a + q_step.scaled(i)): -coef}, bound_q, bound_t
        )
        result = mul(result, factor)
    return result


def inverse_pochhammer(
    a: ExponentVector, q_step: ExponentVector, n: int, bound_q: int, bound_t: int, coef: int = 1
) -> TruncatedSeries:
    """``1 / (coef*a; q_step)_n`` as a product of geometric series."""
    a, q_step = ExponentVector(*a), ExponentVector(*q_step)
    result = TruncatedSeries.one(bound_q, bound_t)
    for i in range(n):
        result = mul(result, invert_one_minus(a + q_step.scaled(i), bound_q, bound_t, coef))
    return result


# -- marginals and text dump ---------------------------------------------


def qt_grid(f: TruncatedSeries) -> dict[tuple[int, int], int]:
    """Sum out every variable but q and t: ``{(eq, et): coefficient}``."""
    grid: dict[tuple[int, int], int] = {}
    for k, c in f._terms.items():
        cell = (_qdeg(k), _tdeg(k))
        grid[cell] = grid.get(cell, 0) + c
    return {cell: c for cell, c in grid.items() if c}


def sorted_terms(f: TruncatedSeries) -> list[tuple[ExponentVector, int]]:
    return sorted(f.items(), key=lambda mc: (mc[0].eq, mc[0].et, mc[0].ex, mc[0].eu, mc[0].ev, mc[0].es))


def _format_term(m: ExponentVector, c: int) -> str:
    parts = [str(c)] + [f"{name}^{e}" for name, e in zip(VARIABLES, m) if e]
    return "*".join(parts)


def dump(f: TruncatedSeries) -> str:
    """One term per line: ``coef x^a q^b u^c v^d s^e t^f``."""
    lines = []
    for m, c in sorted_terms(f):
        lines.append(
            f"{c} x^{m.ex} q^{m.eq} u^{m.eu} v^{m.ev} s^{m.es} t^{m.et}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def parse_dump(text: str, bound_q: int, bound_t: int) -> TruncatedSeries:
    terms = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        coef, *powers = line.split()
        exps = [int(p.split("^")[1]) for p in powers]
        terms[ExponentVector(*exps)] = int(coef)
    return TruncatedSeries(terms, bound_q, bound_t)


class SeriesRequest:
    """Reliability window plus the set of variables a constructor should keep.

    Variables outside ``active`` are evaluated at 1; monomials built with
    :meth:`m` silently drop them.
    """

    __slots__ = ("bound_q", "bound_t", "active")

    def __init__(self, bound_q: int, bound_t: int, active: Iterable[str] = VARIABLES):
        if bound_q < 0 or bound_t < 0:
            raise SeriesError("bounds must be nonnegative")
        self.bound_q = bound_q
        self.bound_t = bound_t
        self.active = frozenset(active)
        unknown = self.active - set(VARIABLES)
        if unknown:
            raise SeriesError(f"unknown variables {sorted(unknown)}")

    def __repr__(self) -> str:
        return f"SeriesRequest({self.bound_q}, {self.bound_t}, {sorted(self.active)})"

    def __eq__(self, other):
        return isinstance(other, SeriesRequest) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.bound_q, self.bound_t, self.active)

    def with_active(self, active: Iterable[str]) -> "SeriesRequest":
        return SeriesRequest(self.bound_q, self.bound_t, active)

    def with_bounds(self, bound_q: int, bound_t: int) -> "SeriesRequest":
        return SeriesRequest(bound_q, bound_t, self.active)

    def m(self, **exps: int) -> ExponentVector:
        return mono(**{k: e for k, e in exps.items() if k in self.active})

    def zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.bound_q, self.bound_t)

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.bound_q, self.bound_t)

    def monomial(self, coef: int = 1, **exps: int) -> TruncatedSeries:
        return TruncatedSeries.monomial(self.m(**exps), self.bound_q, self.bound_t, coef)

    def geometric(self, coef: int = 1, **exps: int) -> TruncatedSeries:
        """``1 / (1 - coef * monomial)``."""
        return invert_one_minus(self.m(**exps), self.bound_q, self.bound_t, coef)

    def series(self, terms: Mapping[ExponentVector, int]) -> TruncatedSeries:
        return TruncatedSeries(terms, self.bound_q, self.bound_t)

    def restrict(self, f: TruncatedSeries) -> TruncatedSeries:
        """Evaluate every inactive variable of ``f`` at 1."""
        rules = {name: ExponentVector() for name in VARIABLES if name not in self.active}
        if not rules or not any(
            f._range(_INDEX[n]) != (0, 0) for n in rules
        ):
            return f
        return substitute(f, rules)
