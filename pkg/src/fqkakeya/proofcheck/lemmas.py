"""
End-to-end checks of the vanishing lemmas and the counting that follows them.

Each verifier assembles a ConditionSystem over the relevant monomial basis
and reports its kernel dimension: a trivial kernel means no nonzero
polynomial of the space satisfies all the conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Sequence

from ..errors import EnumerationTooLarge, NotKakeya
from ..geometry import Line
from ..gf import Field
from ..kakeya import LineSelection, PointSet, is_kakeya, select_lines
from .conditions import (
    ConditionSystem,
    VanishingOrderSpec,
    line_rows,
    order2_rows,
    wp_condition_index_set,
)
from .monomials import MonomialSet, monomial_set_3d, monomial_set_degree, monomial_set_general
from .polytopes import PolytopeRegion, polytope_count

BASIS_LIMIT = 5000


@dataclass
class KernelReport:
    kernel_dim: int
    ok: bool
    rank: int
    n_rows: int
    basis_size: int
    checks: dict = dc_field(default_factory=dict)
    system: ConditionSystem | None = dc_field(default=None, repr=False)

    def __iter__(self):
        # unpacks as (kernel_dim, ok)
        return iter((self.kernel_dim, self.ok))


def verify_lemma_3dim(K: PointSet) -> KernelReport:
    """Order-2 vanishing on a Kakeya set of F_q^3 forces P = 0 in the dim3 space."""
    if K.n != 3:
        raise ValueError("verify_lemma_3dim needs a subset of F_q^3")
    f = K.field
    if f.q > 5:
        raise EnumerationTooLarge(f"q = {f.q} > 5")
    res = is_kakeya(K)
    if not res.ok:
        raise NotKakeya(f"no line in direction {res.failing_direction}")
    basis = monomial_set_3d(f.q)
    system = ConditionSystem(f, basis)
    for p in K.points():
        for k, row in enumerate(order2_rows(f, basis, p)):
            system.add(row, (p, "order2", k))
    kd = system.kernel_dim
    closed = f.q ** 3 + f.q ** 2
    checks = {
        "basis_size_closed_form": len(basis) == closed,
        "four_K_ge_dim_V": 4 * len(K) >= closed,
        "rows_ge_dim_V": len(system.rows) >= len(basis),
    }
    return KernelReport(kd, kd == 0, system.rank, len(system.rows), len(basis), checks, system)


def codim_bound_lemma4(n: int, q: int, r: int, m: int) -> int:
    """C(r' + n - 1, n) + m * #(lattice points of r * parallelogramoid), r' = (2 - 1/q) r."""
    spec = VanishingOrderSpec(q, r)
    rp = int(spec.r_prime)
    return comb(rp + n - 1, n) + m * polytope_count(PolytopeRegion("parallelogramoid", n, q), r)


def wp_system(field: Field, basis: MonomialSet, point: Sequence[int], lines: Sequence[Line],
              r: int) -> ConditionSystem:
    """All order-(r, r') conditions at ``point`` along each of ``lines``."""
    indices = wp_condition_index_set(basis.n, field.q, VanishingOrderSpec(field.q, r))
    system = ConditionSystem(field, basis)
    point = tuple(point)
    for line in lines:
        for c, row in zip(indices, line_rows(field, basis, point, line, indices)):
            system.add(row, (point, line.direction, c.i, c.j, c.plus))
    return system


def wp_codim_at_origin(field: Field, n: int, r: int, lines: Sequence[Line]) -> tuple[int, int]:
    """(codim W_p, bound) at p = origin, for lines through the origin.

    At the origin each condition only involves monomials of degree
    |i| + j, so the degree slice up to the largest such degree carries the
    exact codimension in the full polynomial ring.
    """
    origin = (0,) * n
    indices = wp_condition_index_set(n, field.q, VanishingOrderSpec(field.q, r))
    top = max(sum(c.i) + c.j for c in indices)
    basis = monomial_set_degree(n, field.q, top)
    system = wp_system(field, basis, origin, lines, r)
    return system.rank, codim_bound_lemma4(n, field.q, r, len(lines))


def verify_zero_lemma(K: PointSet, L: LineSelection | None, r: int) -> KernelReport:
    """Order-(r, r') vanishing along the selected lines forces P = 0 in V."""
    f = K.field
    spec = VanishingOrderSpec(f.q, r)
    L = select_lines(K, L)
    n = K.n
    basis = monomial_set_general(n, f.q, r)
    if len(basis) > BASIS_LIMIT:
        raise EnumerationTooLarge(f"|A| = {len(basis)} exceeds {BASIS_LIMIT}")
    indices = wp_condition_index_set(n, f.q, spec)
    system = ConditionSystem(f, basis)
    codim_sum = 0
    for p in K.points():
        through = [L.lines[d] for d in sorted(L.lines) if p in L.lines[d]]
        codim_sum += codim_bound_lemma4(n, f.q, r, len(through))
        for line in through:
            for c, row in zip(indices, line_rows(f, basis, p, line, indices)):
                system.add(row, (p, line.direction, c.i, c.j, c.plus))
    kd = system.kernel_dim
    checks = {
        "dim_V_le_rows": len(basis) <= len(system.rows),
        "dim_V_le_codim_sum": len(basis) <= codim_sum,
        "incidences_eq_q_pow_n": sum(len(L.lines_through(p)) for p in K.points()) == f.q ** n,
    }
    rep = KernelReport(kd, kd == 0, system.rank, len(system.rows), len(basis), checks, system)
    rep.checks["codim_sum"] = codim_sum
    return rep


@dataclass
class InequalityAudit:
    q: int
    n: int
    threshold: Fraction
    samples: list
    ok: bool


def theorem_inequality_audit(q: int, n: int) -> InequalityAudit:
    """n(1-1/q)q^n + q^n <= X(2-1/q)^n + q^n(n-1)(1-1/q)  <=>  X >= q^n / (2-1/q)^(n-1).

    Both sides are evaluated exactly at sample values of X around the
    threshold and the truth values compared.
    """
    c = 2 - Fraction(1, q)
    one_minus = 1 - Fraction(1, q)
    qn = Fraction(q) ** n
    threshold = qn / c ** (n - 1)
    eps = 1 / qn
    xs = {Fraction(0), threshold, threshold - eps, threshold + eps, qn}
    xs.update(qn * k / 16 for k in range(17))
    samples = []
    ok = True
    for x in sorted(xs):
        original = n * one_minus * qn + qn <= x * c ** n + qn * (n - 1) * one_minus
        rearranged = x >= threshold
        ok &= original == rearranged
        samples.append((x, original, rearranged))
    return InequalityAudit(q, n, threshold, samples, ok)
