"""
Vanishing conditions as rows of an exact matrix over GF(q).

A row is a linear functional on the coefficient vector (c_alpha) of a
polynomial sum_alpha c_alpha x^alpha written in a fixed monomial basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple, Sequence

from ..errors import DimensionMismatch, PointNotOnLine, RNotDivisible
from ..geometry import Line
from ..gf import Field
from ..poly import Polynomial, multi_indices_upto
from . import linalg
from .monomials import MonomialSet


@dataclass(frozen=True)
class VanishingOrderSpec:
    """Order (r, r') vanishing with r' = (2 - 1/q) r and q | r."""

    q: int
    r: int

    def __post_init__(self):
        if self.r < 1 or self.r % self.q:
            raise RNotDivisible(f"r = {self.r} is not a positive multiple of q = {self.q}")

    @property
    def r_prime(self) -> Fraction:
        return Fraction(2 * self.q - 1, self.q) * self.r

    def j_count(self, w: int) -> int:
        """Number of j >= 0 with j < r' - w/q."""
        return max(math.ceil(self.r_prime - Fraction(w, self.q)), 0)


class ConditionIndex(NamedTuple):
    i: tuple
    j: int
    plus: bool  # |i| + j >= r'


def wp_condition_index_set(n: int, q: int, spec: VanishingOrderSpec | int) -> list[ConditionIndex]:
    """All (i, j) with |i| < r and j < r' - |i|/q, tagged by |i| + j >= r'."""
    if not isinstance(spec, VanishingOrderSpec):
        spec = VanishingOrderSpec(q, spec)
    rp = spec.r_prime
    out = []
    for i in multi_indices_upto(n - 1, spec.r):
        w = sum(i)
        for j in range(spec.j_count(w)):
            out.append(ConditionIndex(i, j, w + j >= rp))
    return out


@dataclass
class ConditionSystem:
    field: Field
    basis: MonomialSet
    rows: list = dc_field(default_factory=list)
    tags: list = dc_field(default_factory=list)
    _rank: int | None = dc_field(default=None, repr=False)

    def add(self, row: list[int], tag) -> None:
        if len(row) != len(self.basis):
            raise DimensionMismatch("row length differs from basis size")
        self.rows.append(row)
        self.tags.append(tag)
        self._rank = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = linalg.rank(self.field, self.rows) if self.rows else 0
        return self._rank

    @property
    def kernel_dim(self) -> int:
        return len(self.basis) - self.rank

    def kernel_basis(self) -> list[list[int]]:
        return linalg.kernel_basis(self.field, self.rows, len(self.basis))

    def to_text(self) -> str:
        """Portable matrix dump: a header ``q n |A| #rows`` then one row per line."""
        lines = [f"{self.field.q} {self.basis.n} {len(self.basis)} {len(self.rows)}"]
        lines.extend(" ".join(map(str, row)) for row in self.rows)
        return "\n".join(lines) + "\n"


def rank(system: ConditionSystem) -> int:
    return system.rank


def to_polynomial(field: Field, basis: MonomialSet, coeffs: Sequence[int]) -> Polynomial:
    return Polynomial(field, basis.n, {a: c for a, c in zip(basis.members, coeffs) if c})


def _powers(field: Field, x: int, top: int) -> list[int]:
    out = [1]
    for _ in range(top):
        out.append(field.mul(out[-1], x))
    return out


def order2_rows(field: Field, basis: MonomialSet, p: Sequence[int]) -> list[list[int]]:
    """Rows for P(p) = 0 and the n first-order derivatives at p."""
    n = basis.n
    if len(p) != n:
        raise DimensionMismatch(f"point of dimension {len(p)} for a basis in {n} variables")
    top = max((max(a) for a in basis.members), default=0)
    pw = [_powers(field, x, top) for x in p]
    rows = [[0] * len(basis) for _ in range(n + 1)]
    for col, a in enumerate(basis.members):
        v = 1
        for k in range(n):
            v = field.mul(v, pw[k][a[k]])
        rows[0][col] = v
        for j in range(n):
            if a[j] == 0:
                continue
            v = field.from_int(a[j])
            for k in range(n):
                v = field.mul(v, pw[k][a[k] - (k == j)])
            rows[1 + j][col] = v
    return rows


def condition_row(field: Field, basis: MonomialSet, p: Sequence[int], line: Line,
                  i: Sequence[int], j: int) -> list[int]:
    """Row of the functional P -> Q^(j)(t0), Q(t) = P^(i,0)(a + b t), p = a + b t0.

    Built monomial by monomial from Polynomial.hasse_derivative and
    Polynomial.restrict_to_line; ``line_rows`` is the batched equivalent.
    """
    t0 = line.parameter_of(p) if len(p) == len(line.base) else None
    if t0 is None:
        raise PointNotOnLine(f"{tuple(p)} is not on {line}")
    full = tuple(i) + (0,)
    if len(full) != basis.n:
        raise DimensionMismatch("i must have n - 1 entries")
    row = []
    for a in basis.members:
        d = Polynomial.monomial(field, a).hasse_derivative(full)
        row.append(d.restrict_to_line(line).hasse_at(j, t0) if not d.is_zero() else 0)
    return row


def line_rows(field: Field, basis: MonomialSet, p: Sequence[int], line: Line,
              indices: Sequence[ConditionIndex]) -> list[list[int]]:
    """condition_row for many (i, j) at once.

    Q^(j)(t0) is the coefficient of s^j in P^(i,0)(p + b s), and for a
    monomial that is a product of truncated binomial expansions
    (p_k + b_k s)^e.
    """
    if line.parameter_of(p) is None:
        raise PointNotOnLine(f"{tuple(p)} is not on {line}")
    n = basis.n
    b = line.dir
    jmax = max((c.j for c in indices), default=0)
    trunc = jmax + 1
    top = max((max(a) for a in basis.members), default=0)
    ppow = [_powers(field, x, top) for x in p]
    bpow = [_powers(field, x, trunc) for x in b]
    cache: dict = {}

    def linear_power(k: int, e: int) -> list[int]:
        key = (k, e)
        got = cache.get(key)
        if got is None:
            got = [field.mul(field.binom(e, u), field.mul(ppow[k][e - u], bpow[k][u]))
                   for u in range(min(e, jmax) + 1)]
            cache[key] = got
        return got

    def mul_trunc(x: list[int], y: list[int]) -> list[int]:
        out = [0] * min(len(x) + len(y) - 1, trunc)
        for u, xu in enumerate(x):
            if xu:
                for v, yv in enumerate(y):
                    if u + v >= trunc:
                        break
                    if yv:
                        out[u + v] = field.add(out[u + v], field.mul(xu, yv))
        return out

    by_i: dict = {}
    for c in indices:
        by_i.setdefault(tuple(c.i), []).append(c.j)
    jet_rows = {}
    for i in by_i:
        jets = []
        for a in basis.members:
            coef = 1
            for k in range(n - 1):
                if a[k] < i[k]:
                    coef = 0
                    break
                coef = field.mul(coef, field.binom(a[k], i[k]))
            if not coef:
                jets.append(None)
                continue
            jet = [coef]
            for k in range(n):
                e = a[k] - (i[k] if k < n - 1 else 0)
                if e:
                    jet = mul_trunc(jet, linear_power(k, e))
            jets.append(jet)
        jet_rows[i] = jets
    rows = []
    for c in indices:
        jets = jet_rows[tuple(c.i)]
        rows.append([jet[c.j] if jet is not None and c.j < len(jet) else 0 for jet in jets])
    return rows
