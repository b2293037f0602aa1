"""Exact Gaussian elimination over GF(q)."""

from __future__ import annotations

from typing import Sequence

from ..gf import Field


def rref(field: Field, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Columns are scanned left to right; the pivot is the first row (in the
    current order) with a nonzero entry in that column.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    top = 0
    prime = field.k == 1
    p = field.p
    for c in range(ncols):
        if top == len(m):
            break
        piv = next((r for r in range(top, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        row = m[top]
        inv = field.inv(row[c])
        if prime:
            row[:] = [x * inv % p for x in row]
        else:
            row[:] = [field.mul(x, inv) for x in row]
        for r in range(len(m)):
            if r == top:
                continue
            other = m[r]
            factor = other[c]
            if not factor:
                continue
            if prime:
                other[:] = [(x - factor * y) % p for x, y in zip(other, row)]
            else:
                other[:] = [field.sub(x, field.mul(factor, y)) for x, y in zip(other, row)]
        pivots.append(c)
        top += 1
    return m[:top], pivots


def rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[1])


def kernel_basis(field: Field, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {c : row . c = 0 for every row}, one vector per free column."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = rref(field, rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis
