"""
Kakeya and almost-Kakeya sets in F_q^n.

A set is Kakeya when it contains a full line in every direction class and
almost Kakeya when it does so for every non-horizontal direction
(b_1, ..., b_{n-1}, 1).  This module holds the set type, the two checkers,
the odd-q constructions, an exhaustive minimum search in the plane, and
the closed-form size bounds.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import EnumerationTooLarge, EvenCharacteristic, NotAlmostKakeya
from .fmt import rational_json
from .geometry import (
    Line,
    all_directions,
    all_points,
    axpy,
    lines_in_direction,
    nonhorizontal_directions,
    pack,
    pivot_index,
    unpack,
)
from .gf import Field, field_new, prime_power

CHECK_LIMIT = 10 ** 7
SHIFT_LIMIT = 10 ** 6


@dataclass(frozen=True)
class PointSet:
    """A subset of F_q^n stored as packed point indices."""

    field: Field
    n: int
    members: frozenset

    @classmethod
    def from_points(cls, field: Field, n: int, points: Iterable[Sequence[int]]) -> "PointSet":
        members = set()
        for p in points:
            if len(p) != n or any(not 0 <= c < field.q for c in p):
                raise ValueError(f"{p!r} is not a point of F_{field.q}^{n}")
            members.add(pack(field, p))
        return cls(field, n, frozenset(members))

    @classmethod
    def full_space(cls, field: Field, n: int) -> "PointSet":
        return cls(field, n, frozenset(range(field.q ** n)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, point) -> bool:
        return len(point) == self.n and pack(self.field, point) in self.members

    def __iter__(self):
        return iter(self.points())

    def points(self) -> list[tuple]:
        """Members as coordinate tuples, sorted lexicographically."""
        return sorted(unpack(self.field, m, self.n) for m in self.members)

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.field, self.n, self.members | other.members)

    def to_json(self) -> dict:
        out = self.field.to_json()
        out["n"] = self.n
        out["points"] = [list(p) for p in self.points()]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PointSet":
        field = field_new(int(data["q"]), data.get("modulus"))
        return cls.from_points(field, int(data["n"]), (tuple(p) for p in data["points"]))


@dataclass
class LineSelection:
    """One chosen line per direction, keyed by canonical direction."""

    lines: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines.values())

    def lines_through(self, point) -> list[Line]:
        point = tuple(point)
        return [l for l in self.lines.values() if point in l]

    def incidences(self) -> Counter:
        """|L_p| for every point p lying on some selected line."""
        c: Counter = Counter()
        for l in self.lines.values():
            for p in l.points():
                c[p] += 1
        return c

    def to_json(self) -> list:
        return [self.lines[d].to_json() for d in sorted(self.lines)]

    @classmethod
    def from_json(cls, field: Field, data: list) -> "LineSelection":
        sel = cls()
        for item in data:
            l = Line.from_json(field, item)
            sel.lines[l.direction] = l
        return sel


class CheckResult(NamedTuple):
    ok: bool
    selection: LineSelection | None
    failing_direction: tuple | None


def _full_lines(field: Field, pts: list[tuple], d: tuple) -> list[tuple]:
    """Canonical bases of the lines with direction d lying inside pts, sorted."""
    j = pivot_index(d)
    counts: Counter = Counter()
    for p in pts:
        counts[axpy(field, p, d, field.neg(p[j]))] += 1
    return sorted(b for b, c in counts.items() if c == field.q)


def _check(K: PointSet, directions: list[tuple]) -> CheckResult:
    if K.field.q ** K.n > CHECK_LIMIT:
        raise EnumerationTooLarge(f"q^n = {K.field.q ** K.n} exceeds {CHECK_LIMIT}")
    pts = K.points()
    sel = LineSelection()
    for d in directions:
        bases = _full_lines(K.field, pts, d)
        if not bases:
            return CheckResult(False, None, d)
        sel.lines[d] = Line(K.field, bases[0], d)
    return CheckResult(True, sel, None)


def is_kakeya(K: PointSet) -> CheckResult:
    """Check every direction class; the witness holds the first contained line per class."""
    return _check(K, all_directions(K.field, K.n))


def is_almost_kakeya(K: PointSet) -> CheckResult:
    return _check(K, nonhorizontal_directions(K.field, K.n))


def select_lines(K: PointSet, witness: LineSelection | None = None) -> LineSelection:
    """One contained line per non-horizontal direction.

    A supplied witness is validated and returned as is; otherwise the
    first contained line of each direction is taken.
    """
    dirs = nonhorizontal_directions(K.field, K.n)
    if witness is None:
        res = is_almost_kakeya(K)
        if not res.ok:
            raise NotAlmostKakeya(f"no line in direction {res.failing_direction}")
        return res.selection
    chosen = LineSelection()
    for d in dirs:
        l = witness.lines.get(d)
        if l is None:
            raise NotAlmostKakeya(f"witness has no line in direction {d}")
        if any(p not in K for p in l.points()):
            raise NotAlmostKakeya(f"witness line {l} is not contained in the set")
        chosen.lines[d] = l
    return chosen


def _require_odd(field: Field):
    if field.p == 2:
        raise EvenCharacteristic(f"q = {field.q} is even")


def construct_almost_kakeya_odd(field: Field, n: int) -> tuple[PointSet, LineSelection]:
    """The quadratic almost-Kakeya set of size q*((q+1)/2)^(n-1), q odd.

    K = {(s_1^2 - t^2/4, ..., s_{n-1}^2 - t^2/4, t)}.  The line of
    direction b = (b', 1) through (b_1^2, ..., b_{n-1}^2, 0) lies in K
    because b_j^2 + t*b_j = (b_j + t/2)^2 - t^2/4.
    """
    _require_odd(field)
    if n < 1:
        raise ValueError("n must be >= 1")
    f = field
    quarter = f.inv(f.from_int(4))
    squares = sorted({f.mul(s, s) for s in f.elements()})
    pts = []
    for t in f.elements():
        shift = f.mul(quarter, f.mul(t, t))
        for ss in itertools.product(squares, repeat=n - 1):
            pts.append(tuple(f.sub(s, shift) for s in ss) + (t,))
    K = PointSet.from_points(f, n, pts)
    sel = LineSelection()
    for d in nonhorizontal_directions(f, n):
        base = tuple(f.mul(b, b) for b in d[:-1]) + (0,)
        sel.lines[d] = Line(f, base, d)
    return K, sel


@dataclass
class RecursiveKakeya:
    set: PointSet
    almost_size: int
    lower_size: int
    shift: tuple | None
    expectation: Fraction  # mean size over a uniformly random shift


def recursive_construction(field: Field, n: int, strategy: str = "exhaustive",
                           seed: int = 0, trials: int = 64, rng: random.Random | None = None) -> RecursiveKakeya:
    """K_n = K_n' u (K_{n-1} + x) with K_{n-1} placed in {x_n = 0}.

    ``strategy`` is "exhaustive" (every shift x, first minimizer in
    lexicographic order) or "sampled" (``trials`` shifts drawn from
    ``random.Random(seed)``).
    """
    _require_odd(field)
    q = field.q
    if n == 1:
        return RecursiveKakeya(PointSet.full_space(field, 1), q, 0, None, Fraction(q))
    if strategy not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown shift strategy {strategy!r}")
    if strategy == "exhaustive" and q ** n > SHIFT_LIMIT:
        raise EnumerationTooLarge(f"q^n = {q ** n} shifts exceeds {SHIFT_LIMIT}")
    if rng is None:
        rng = random.Random(seed)
    almost, _ = construct_almost_kakeya_odd(field, n)
    lower = recursive_construction(field, n - 1, strategy, seed, trials, rng).set
    near = [p + (0,) for p in lower.points()]
    a_members = almost.members
    if strategy == "exhaustive":
        candidates = all_points(field, n)
    else:
        candidates = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(trials)]
    best = None
    best_shift = None
    for x in candidates:
        overlap = sum(1 for p in near if pack(field, axpy(field, p, x, 1)) in a_members)
        if best is None or overlap > best:
            best, best_shift = overlap, tuple(x)
    shifted = PointSet.from_points(field, n, (axpy(field, p, best_shift, 1) for p in near))
    K = almost.union(shifted)
    expectation = len(almost) + len(lower) * (1 - Fraction(len(almost), q ** n))
    return RecursiveKakeya(K, len(almost), len(lower), best_shift, expectation)


def construct_kakeya_recursive(field: Field, n: int, strategy: str = "exhaustive",
                               seed: int = 0, trials: int = 64) -> PointSet:
    return recursive_construction(field, n, strategy, seed, trials).set


class MinimalKakeya(NamedTuple):
    size: int
    example: PointSet


def minimal_kakeya_2d(field: Field, fix_translations: bool = True) -> MinimalKakeya:
    """Exact minimum size of a Kakeya set in F_q^2 (q <= 7).

    Searches over one line per direction class, lexicographically, with
    branch-and-bound: the k-th chosen line meets the k earlier ones in at
    most k points.  With ``fix_translations`` the lines of the first two
    classes are pinned through the origin; translations act transitively
    on those pairs, so the minimum is unchanged.
    """
    q = field.q
    if q > 7:
        raise EnumerationTooLarge(f"minimal 2-D search supports q <= 7, got {q}")
    classes = []
    for c, d in enumerate(all_directions(field, 2)):
        masks = []
        for l in lines_in_direction(field, 2, d):
            if fix_translations and c < 2 and any(l.base):
                continue
            m = 0
            for p in l.points():
                m |= 1 << pack(field, p)
            masks.append(m)
        classes.append(masks)
    depth = len(classes)
    rest = [sum(max(q - j, 0) for j in range(k, depth)) for k in range(depth + 1)]
    best = [q * q + 1, 0]

    def search(k: int, union: int):
        if union.bit_count() + rest[k] >= best[0]:
            return
        if k == depth:
            best[0], best[1] = union.bit_count(), union
            return
        for m in classes[k]:
            search(k + 1, union | m)

    search(0, 0)
    members = frozenset(i for i in range(q * q) if best[1] >> i & 1)
    return MinimalKakeya(best[0], PointSet(field, 2, members))


# -- closed-form bounds ---------------------------------------------------------

def almost_kakeya_size(q: int, n: int) -> int:
    return q * ((q + 1) // 2) ** (n - 1)


def recursive_expectation(q: int, n: int) -> Fraction:
    """Mean size of the recursive odd-q construction when each level's
    lower-dimensional set has its own mean size."""
    e = Fraction(q)
    for m in range(2, n + 1):
        a = almost_kakeya_size(q, m)
        e = a + e * (1 - Fraction(a, q ** m))
    return e


@dataclass
class BoundReport:
    q: int
    n: int
    dkss_bound: Fraction
    new_bound: Fraction
    thm3_bound: Fraction | None = None
    sharp_2d: int | None = None
    almost_construction: int | None = None
    recursive_expectation: Fraction | None = None
    even_construction: Fraction | None = None

    def rows(self) -> list[tuple[str, Fraction]]:
        out = [("dkss", self.dkss_bound), ("new", self.new_bound)]
        optional = [
            ("thm3", self.thm3_bound),
            ("sharp_2d", self.sharp_2d),
            ("almost_construction", self.almost_construction),
            ("recursive_expectation", self.recursive_expectation),
            ("even_construction", self.even_construction),
        ]
        out.extend((name, Fraction(v)) for name, v in optional if v is not None)
        return out

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "bounds": {name: rational_json(v) for name, v in self.rows()}}


def bounds(q: int, n: int) -> BoundReport:
    """Every size bound and construction size that applies to (q, n)."""
    prime_power(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    ratio = 2 - Fraction(1, q)
    rep = BoundReport(q, n, Fraction(q) ** n / ratio ** n, Fraction(q) ** n / ratio ** (n - 1))
    if n == 3:
        rep.thm3_bound = Fraction(q ** 3 + q, 4)
    if n == 2:
        rep.sharp_2d = q * (q + 1) // 2 + ((q - 1) // 2 if q % 2 else 0)
    if q % 2:
        rep.almost_construction = almost_kakeya_size(q, n)
        rep.recursive_expectation = recursive_expectation(q, n)
    else:
        h = Fraction(1, 2 ** (n - 1))
        rep.even_construction = h * q ** n + (1 - h) * q ** (n - 1)
    return rep
