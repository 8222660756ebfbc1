"""The dihedral group D6 acting on honeycomb cells, and its subgroup lattice.

Cells use cube coordinates ``(a, b, c)`` with ``a + b + c = 0``; ``a`` is the
column index (flat-top hexagons, columns are vertical).  Every element of D6
acts as a signed permutation of the three coordinates, which is how the
elements are stored.  ``matrix`` gives the same map on ``(a, c)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


@dataclass(frozen=True)
class GroupElement:
    name: str
    perm: tuple[int, int, int]  # image coordinate i is sign * source coordinate perm[i]
    sign: int

    def apply(self, cell: tuple[int, int, int]) -> tuple[int, int, int]:
        s = self.sign
        p = self.perm
        return (s * cell[p[0]], s * cell[p[1]], s * cell[p[2]])

    def compose(self, other: "GroupElement") -> tuple[tuple[int, int, int], int]:
        """Signed permutation of ``self o other`` (apply ``other`` first)."""
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        return perm, self.sign * other.sign

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer 2x2 matrix acting on column vectors ``(a, c)``."""
        cols = []
        for a, c in ((1, 0), (0, 1)):
            img = self.apply((a, -a - c, c))
            cols.append((img[0], img[2]))
        return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


# r: clockwise rotation by pi/3; h: reflection in the horizontal axis;
# v: reflection in the vertical axis.
_R = ((1, 2, 0), -1)  # (a, b, c) -> (-b, -c, -a)
_H = ((0, 2, 1), 1)  # (a, b, c) -> (a, c, b)


def _compose(f, g):
    """Signed permutation of f o g."""
    (pf, sf), (pg, sg) = f, g
    return tuple(pg[pf[i]] for i in range(3)), sf * sg


def _rpow(k):
    out = ((0, 1, 2), 1)
    for _ in range(k % 6):
        out = _compose(_R, out)
    return out


def _build_elements() -> dict[str, GroupElement]:
    defs = {
        "id": _rpow(0),
        "r": _rpow(1),
        "r2": _rpow(2),
        "r3": _rpow(3),
        "r4": _rpow(4),
        "r5": _rpow(5),
        # tau = h; ds2 = tau r^2, ds1 = tau r^4; da3 = tau r, da2 = tau r^3, da1 = tau r^5
        "ds3": _H,
        "ds2": _compose(_H, _rpow(2)),
        "ds1": _compose(_H, _rpow(4)),
        "da3": _compose(_H, _rpow(1)),
        "da2": _compose(_H, _rpow(3)),
        "da1": _compose(_H, _rpow(5)),
    }
    return {name: GroupElement(name, perm, sign) for name, (perm, sign) in defs.items()}


ELEMENTS: dict[str, GroupElement] = _build_elements()
ELEMENT_NAMES = tuple(ELEMENTS)
# the two reflections used as h and v throughout
H_NAME = "ds3"
V_NAME = "da2"
ALIASES = {"h": H_NAME, "v": V_NAME}


def element(name: str) -> GroupElement:
    return ELEMENTS[ALIASES.get(name, name)]


def multiply(x: str, y: str) -> str:
    """Name of ``x o y``."""
    target = _compose((ELEMENTS[x].perm, ELEMENTS[x].sign), (ELEMENTS[y].perm, ELEMENTS[y].sign))
    for name, g in ELEMENTS.items():
        if (g.perm, g.sign) == target:
            return name
    raise AssertionError("D6 is not closed")  # pragma: no cover


def inverse(x: str) -> str:
    for y in ELEMENT_NAMES:
        if multiply(x, y) == "id":
            return y
    raise AssertionError("no inverse")  # pragma: no cover


def closure(gens: list[str]) -> frozenset[str]:
    group = {"id", *gens}
    changed = True
    while changed:
        changed = False
        for a in list(group):
            for b in list(group):
                c = multiply(a, b)
                if c not in group:
                    group.add(c)
                    changed = True
    return frozenset(group)


SUBGROUP_GENERATORS = {
    "0": [],
    "C2": ["r3"],
    "C3": ["r2"],
    "C6": ["r"],
    "F11": ["ds2"],
    "F12": ["ds1"],
    "F13": ["ds3"],
    "H11": ["da3"],
    "H12": ["da2"],
    "H13": ["da1"],
    "F31": ["r2", "ds2"],
    "H31": ["r2", "da3"],
    "D21": ["r3", "ds2"],
    "D22": ["r3", "ds1"],
    "D23": ["r3", "ds3"],
    "D6": ["r", "ds3"],
}

# mu(0, H) for every subgroup, as a hand-checked reference for the recurrence
EXPECTED_MOEBIUS = {
    "0": 1,
    "C2": -1, "C3": -1,
    "F11": -1, "F12": -1, "F13": -1,
    "H11": -1, "H12": -1, "H13": -1,
    "C6": 1,
    "D21": 2, "D22": 2, "D23": 2,
    "F31": 3, "H31": 3,
    "D6": -6,
}


@dataclass(frozen=True)
class SubgroupLattice:
    subgroups: dict[str, frozenset[str]]

    def leq(self, h: str, k: str) -> bool:
        return self.subgroups[h] <= self.subgroups[k]

    def label_of(self, elements: frozenset[str]) -> str:
        for label, els in self.subgroups.items():
            if els == elements:
                return label
        raise ValueError(f"{sorted(elements)} is not a subgroup of D6")

    def upper_set(self, h: str) -> list[str]:
        return [k for k in self.subgroups if self.leq(h, k)]

    def moebius(self, h: str, k: str) -> int:
        return _moebius(self, h, k)

    def conjugacy_classes(self) -> list[list[str]]:
        """Subgroups grouped by conjugacy, in lattice order."""
        seen: set[str] = set()
        classes = []
        for label, els in self.subgroups.items():
            if label in seen:
                continue
            cls = []
            for g in ELEMENT_NAMES:
                gi = inverse(g)
                conj = frozenset(multiply(multiply(g, x), gi) for x in els)
                other = self.label_of(conj)
                if other not in cls:
                    cls.append(other)
            seen.update(cls)
            classes.append(sorted(cls, key=list(self.subgroups).index))
        return classes


@lru_cache(maxsize=None)
def _moebius_cached(key: tuple, h: str, k: str) -> int:
    lattice = _LATTICES[key]
    if not lattice.leq(h, k):
        return 0
    if h == k:
        return 1
    # mu(h, k) = - sum_{h <= j < k} mu(h, j)
    return -sum(
        _moebius_cached(key, h, j)
        for j in lattice.subgroups
        if j != k and lattice.leq(h, j) and lattice.leq(j, k)
    )


_LATTICES: dict[tuple, SubgroupLattice] = {}


def _moebius(lattice: SubgroupLattice, h: str, k: str) -> int:
    key = tuple(sorted((n, tuple(sorted(e))) for n, e in lattice.subgroups.items()))
    _LATTICES.setdefault(key, lattice)
    return _moebius_cached(key, h, k)


def build_lattice() -> SubgroupLattice:
    subgroups = {label: closure(gens) for label, gens in SUBGROUP_GENERATORS.items()}
    return SubgroupLattice(subgroups)


def all_subgroups() -> set[frozenset[str]]:
    """Every subgroup of D6 found by brute force over generating pairs."""
    found = {frozenset({"id"})}
    for a in ELEMENT_NAMES:
        found.add(closure([a]))
    for a, b in combinations(ELEMENT_NAMES, 2):
        found.add(closure([a, b]))
    return found


LATTICE = build_lattice()
