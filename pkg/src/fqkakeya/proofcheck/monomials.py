"""
Monomial bases for the polynomial spaces the vanishing arguments live in.

Two families are used: the three-variable set with total degree < 2q and
the first two exponents < q, and the general set with total degree
< (2 - 1/q) r q and horizontal degree alpha_1 + ... + alpha_{n-1} < r q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

from ..errors import RNotDivisible


@dataclass(frozen=True)
class MonomialSet:
    n: int
    q: int
    variant: str  # "dim3", "general" or "degree"
    members: tuple
    r: int | None = None
    index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {a: k for k, a in enumerate(self.members)})

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, alpha):
        return tuple(alpha) in self.index


def _graded(members) -> tuple:
    return tuple(sorted(members, key=lambda a: (sum(a), a)))


def monomial_set_3d(q: int) -> MonomialSet:
    members = [
        a for a in itertools.product(range(2 * q), repeat=3)
        if sum(a) < 2 * q and a[0] < q and a[1] < q
    ]
    return MonomialSet(3, q, "dim3", _graded(members))


def _check_r(q: int, r: int):
    if r < 1 or r % q:
        raise RNotDivisible(f"r = {r} is not a positive multiple of q = {q}")


def monomial_set_general(n: int, q: int, r: int) -> MonomialSet:
    _check_r(q, r)
    total = 2 * r * q - r  # (2 - 1/q) r q
    horiz = r * q
    members = []
    for head in itertools.product(range(horiz), repeat=n - 1):
        h = sum(head)
        if h >= horiz:
            continue
        for last in range(total - h):
            members.append(head + (last,))
    return MonomialSet(n, q, "general", _graded(members), r)


def monomial_set_degree(n: int, q: int, max_degree: int) -> MonomialSet:
    """All monomials of total degree <= max_degree (a finite slice of the full ring)."""
    members = [a for a in itertools.product(range(max_degree + 1), repeat=n) if sum(a) <= max_degree]
    return MonomialSet(n, q, "degree", _graded(members))


def dim_v_closed_form(n: int, q: int, r: int) -> int:
    """(1 - 1/q) r q * C(rq + n - 2, n - 1) + C(rq + n - 1, n)."""
    _check_r(q, r)
    rq = r * q
    return (rq - r) * comb(rq + n - 2, n - 1) + comb(rq + n - 1, n)
