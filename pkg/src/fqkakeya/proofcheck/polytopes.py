"""
The four polytopes used to count the "upper" vanishing conditions.

Points are pairs (i, j) with i in Z>=0^(n-1), j in Z>=0.  Every region
depends on i only through |i|.  At scale r (write r' = (2 - 1/q) r):

    parallelogramoid  |i| < r,  j < r' - |i|/q,  |i| + j >= r'
    cylinder          |i| < r,  (1 - 1/q) r < j <= (2 - 2/q) r
    simplex1          |i| < r,  j > (1 - 1/q) r,  |i| + j < r'
    simplex2          |i| < r,  (2 - 2/q) r < j < r' - |i|/q

parallelogramoid + simplex1 and cylinder + simplex2 are disjoint unions of
the same set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..poly import multi_indices_upto

NAMES = ("parallelogramoid", "cylinder", "simplex1", "simplex2")
ALIASES = {"para": "parallelogramoid", "box": "cylinder", "cyl": "cylinder", "d1": "simplex1", "d2": "simplex2"}


@dataclass(frozen=True)
class PolytopeRegion:
    name: str
    n: int
    q: int

    def __post_init__(self):
        name = ALIASES.get(self.name, self.name)
        if name not in NAMES:
            raise ValueError(f"unknown polytope {self.name!r}")
        object.__setattr__(self, "name", name)

    def contains(self, i, j: int, r: int) -> bool:
        w = sum(i)
        q = self.q
        if w >= r:
            return False
        rp = Fraction(2 * q - 1, q) * r
        if self.name == "parallelogramoid":
            return j < rp - Fraction(w, q) and w + j >= rp
        if self.name == "cylinder":
            return Fraction(q - 1, q) * r < j <= Fraction(2 * q - 2, q) * r
        if self.name == "simplex1":
            return j > Fraction(q - 1, q) * r and w + j < rp
        return Fraction(2 * q - 2, q) * r < j < rp - Fraction(w, q)


def _candidates(n: int, r: int):
    # every region has |i| < r and j < 2r
    for i in multi_indices_upto(n - 1, r):
        for j in range(2 * r):
            yield i, j


def lattice_points(region: PolytopeRegion, r: int) -> set:
    return {(i, j) for i, j in _candidates(region.n, r) if region.contains(i, j, r)}


def polytope_count(region: PolytopeRegion, r: int) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    return sum(1 for i, j in _candidates(region.n, r) if region.contains(i, j, r))


def polytope_volume_exact(name: str, n: int, q: int) -> Fraction:
    name = PolytopeRegion(name, n, q).name
    one_minus = 1 - Fraction(1, q)
    if name == "cylinder":
        return one_minus / factorial(n - 1)
    if name == "simplex1":
        return Fraction(1, factorial(n))
    if name == "simplex2":
        return Fraction(1, factorial(n) * q)
    return (n - 1) * one_minus / factorial(n)


@dataclass
class UnionIdentity:
    n: int
    q: int
    r: int
    counts: dict
    disjoint_left: bool
    disjoint_right: bool
    unions_equal: bool

    @property
    def ok(self) -> bool:
        c = self.counts
        return (
            self.disjoint_left and self.disjoint_right and self.unions_equal
            and c["parallelogramoid"] + c["simplex1"] == c["cylinder"] + c["simplex2"]
        )


def disjoint_union_identity(n: int, q: int, r: int) -> UnionIdentity:
    """Check parallelogramoid + simplex1 == cylinder + simplex2 point by point at scale r."""
    pts = {name: lattice_points(PolytopeRegion(name, n, q), r) for name in NAMES}
    left = pts["parallelogramoid"] | pts["simplex1"]
    right = pts["cylinder"] | pts["simplex2"]
    return UnionIdentity(
        n, q, r,
        {name: len(v) for name, v in pts.items()},
        not (pts["parallelogramoid"] & pts["simplex1"]),
        not (pts["cylinder"] & pts["simplex2"]),
        left == right,
    )
