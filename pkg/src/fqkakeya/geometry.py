"""
Affine geometry of F_q^n: points, direction classes and lines.

Points and directions are tuples of field-encoded ints.  A direction is
canonical when its last nonzero coordinate is 1; "horizontal" directions
are the ones whose last coordinate is 0.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .gf import Field

Point = tuple  # tuple[int, ...]
Direction = tuple  # canonical tuple[int, ...]


def pivot_index(v: Sequence[int]) -> int:
    """Index of the last nonzero coordinate of v."""
    for j in range(len(v) - 1, -1, -1):
        if v[j]:
            return j
    raise ValueError("the zero vector has no direction")


def canonical_direction(field: Field, v: Sequence[int]) -> Direction:
    """Scale v so its last nonzero coordinate is 1."""
    j = pivot_index(v)
    if v[j] == 1:
        return tuple(v)
    s = field.inv(v[j])
    return tuple(field.mul(s, c) for c in v)


def is_horizontal(direction: Sequence[int]) -> bool:
    return direction[-1] == 0


def axpy(field: Field, a: Sequence[int], b: Sequence[int], t: int) -> Point:
    """The point a + b*t."""
    if field.k == 1:
        p = field.p
        return tuple((x + y * t) % p for x, y in zip(a, b))
    return tuple(field.add(x, field.mul(y, t)) for x, y in zip(a, b))


def pack(field: Field, point: Sequence[int]) -> int:
    """Integer index sum_j point[j] * q^j."""
    q = field.q
    idx = 0
    for c in reversed(point):
        idx = idx * q + c
    return idx


def unpack(field: Field, index: int, n: int) -> Point:
    q = field.q
    out = []
    for _ in range(n):
        index, c = divmod(index, q)
        out.append(c)
    return tuple(out)


def all_points(field: Field, n: int):
    """All q^n points in lexicographic order."""
    return itertools.product(range(field.q), repeat=n)


class Line:
    """The line {base + dir*t : t in F_q}.

    ``base`` and ``dir`` keep the parameterization the line was built
    with; equality and hashing go through the canonical form, in which
    ``dir`` is a canonical direction and ``base`` has a zero at the
    direction's pivot coordinate.
    """

    __slots__ = ("field", "base", "dir", "_key")

    def __init__(self, field: Field, base: Sequence[int], direction: Sequence[int]):
        base = tuple(base)
        direction = tuple(direction)
        if len(base) != len(direction):
            raise ValueError("base and direction have different dimensions")
        if not any(direction):
            raise ValueError("direction must be nonzero")
        self.field = field
        self.base = base
        self.dir = direction
        self._key = None

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def key(self) -> tuple[Point, Direction]:
        if self._key is None:
            d = canonical_direction(self.field, self.dir)
            j = pivot_index(d)
            b0 = axpy(self.field, self.base, d, self.field.neg(self.base[j]))
            self._key = (b0, d)
        return self._key

    def canonical(self) -> "Line":
        base, d = self.key
        return Line(self.field, base, d)

    @property
    def direction(self) -> Direction:
        return self.key[1]

    def points(self) -> list[Point]:
        """The q points, in the element order of the parameter t."""
        return [axpy(self.field, self.base, self.dir, t) for t in self.field.elements()]

    def parameter_of(self, point: Sequence[int]) -> int | None:
        """t0 with base + dir*t0 == point, or None if point is not on the line."""
        f = self.field
        j = pivot_index(self.dir)
        t0 = f.div(f.sub(point[j], self.base[j]), self.dir[j])
        if axpy(f, self.base, self.dir, t0) != tuple(point):
            return None
        return t0

    def __contains__(self, point) -> bool:
        return len(point) == self.n and self.parameter_of(point) is not None

    def __eq__(self, other):
        return isinstance(other, Line) and self.field == other.field and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Line(base={self.base}, dir={self.dir})"

    def to_json(self) -> dict:
        base, d = self.key
        return {"base": list(base), "dir": list(d)}

    @classmethod
    def from_json(cls, field: Field, data: dict) -> "Line":
        return cls(field, data["base"], data["dir"])


def line_points(line: Line) -> list[Point]:
    return line.points()


def all_directions(field: Field, n: int) -> list[Direction]:
    """The (q^n - 1)/(q - 1) canonical directions, sorted lexicographically."""
    out = []
    q = field.q
    for j in range(n):
        # pivot at j: coordinates after j are zero, coordinate j is 1
        for head in itertools.product(range(q), repeat=j):
            out.append(head + (1,) + (0,) * (n - j - 1))
    out.sort()
    return out


def nonhorizontal_directions(field: Field, n: int) -> list[Direction]:
    """The q^(n-1) directions (b_1, ..., b_{n-1}, 1)."""
    return [head + (1,) for head in itertools.product(range(field.q), repeat=n - 1)]


def lines_in_direction(field: Field, n: int, direction: Sequence[int]) -> list[Line]:
    """The q^(n-1) parallel lines with the given direction, ordered by canonical base."""
    d = canonical_direction(field, direction)
    if len(d) != n:
        raise ValueError("direction has the wrong dimension")
    j = pivot_index(d)
    lines = []
    for rest in itertools.product(range(field.q), repeat=n - 1):
        base = rest[:j] + (0,) + rest[j:]
        lines.append(Line(field, base, d))
    lines.sort(key=lambda l: l.base)
    return lines
