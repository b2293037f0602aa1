"""
The reproduction grid behind ``fqkakeya report --all``.

Each section function returns rows of
``(section, q, n, r, quantity, observed, expected, pass)``, all rendered as
strings.  Sections are independent, so they can be farmed out to worker
processes; rows are reassembled in task order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .fmt import ratio
from .gf import field_new, is_prime_power
from .kakeya import (
    PointSet,
    almost_kakeya_size,
    bounds,
    construct_almost_kakeya_odd,
    is_almost_kakeya,
    is_kakeya,
    minimal_kakeya_2d,
    recursive_construction,
)
from .proofcheck import (
    dim_v_closed_form,
    disjoint_union_identity,
    monomial_set_3d,
    monomial_set_general,
    polytope_count,
    polytope_volume_exact,
    theorem_inequality_audit,
    verify_lemma_3dim,
    verify_zero_lemma,
    PolytopeRegion,
)

HEADER = ("section", "q", "n", "r", "quantity", "observed", "expected", "pass")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("KAKEYA_THREADS", "1")))
    except ValueError:
        return 1


def _row(section, q, n, r, quantity, observed, expected, ok):
    def s(v):
        if v is None:
            return ""
        if isinstance(v, Fraction):
            return ratio(v)
        if isinstance(v, bool):
            return str(int(v))
        return str(v)
    return tuple(s(v) for v in (section, q, n, r, quantity, observed, expected, bool(ok)))


def section_bounds(q: int, n: int) -> list:
    rep = bounds(q, n)
    c = 2 * q - 1
    rows = [
        _row("bounds", q, n, None, "dkss", rep.dkss_bound, Fraction(q ** (2 * n), c ** n),
             rep.dkss_bound == Fraction(q ** (2 * n), c ** n)),
        _row("bounds", q, n, None, "new", rep.new_bound, Fraction(q ** (2 * n - 1), c ** (n - 1)),
             rep.new_bound == Fraction(q ** (2 * n - 1), c ** (n - 1))),
        _row("bounds", q, n, None, "new_over_dkss", rep.new_bound / rep.dkss_bound, Fraction(c, q),
             rep.new_bound / rep.dkss_bound == Fraction(c, q)),
    ]
    for name, value in rep.rows()[2:]:
        rows.append(_row("bounds", q, n, None, name, value, None, True))
    return rows


def section_almost(q: int, n: int) -> list:
    K, _ = construct_almost_kakeya_odd(field_new(q), n)
    expected = almost_kakeya_size(q, n)
    return [
        _row("almost", q, n, None, "size", len(K), expected, len(K) == expected),
        _row("almost", q, n, None, "is_almost_kakeya", is_almost_kakeya(K).ok, True, is_almost_kakeya(K).ok),
    ]


def section_recursive(q: int, n: int) -> list:
    rec = recursive_construction(field_new(q), n)
    ok = is_kakeya(rec.set).ok
    return [
        _row("recursive", q, n, None, "size_le_expectation", len(rec.set), rec.expectation,
             len(rec.set) <= rec.expectation),
        _row("recursive", q, n, None, "is_kakeya", ok, True, ok),
    ]


def section_minimal2d(q: int) -> list:
    m = minimal_kakeya_2d(field_new(q))
    sharp = bounds(q, 2).sharp_2d
    return [_row("minimal2d", q, 2, None, "minimum", m.size, sharp, m.size == sharp)]


def section_dimv(q: int, n: int) -> list:
    rows = []
    if n == 3:
        size = len(monomial_set_3d(q))
        rows.append(_row("dimv", q, n, None, "dim3", size, q ** 3 + q ** 2, size == q ** 3 + q ** 2))
    for r in (q, 2 * q):
        closed = dim_v_closed_form(n, q, r)
        if closed > 5000:
            continue
        size = len(monomial_set_general(n, q, r))
        rows.append(_row("dimv", q, n, r, "general", size, closed, size == closed))
    return rows


def section_polytopes(q: int, n: int) -> list:
    rows = []
    vol = polytope_volume_exact("parallelogramoid", n, q)
    for r in (q, 2 * q, 4 * q):
        ident = disjoint_union_identity(n, q, r)
        rows.append(_row("polytopes", q, n, r, "disjoint_union", ident.ok, True, ident.ok))
        density = Fraction(polytope_count(PolytopeRegion("parallelogramoid", n, q), r), r ** n)
        rows.append(_row("polytopes", q, n, r, "density", density, vol, abs(density - vol) <= Fraction(3 * n, r)))
    return rows


def section_lemma3(q: int) -> list:
    rep = verify_lemma_3dim(PointSet.full_space(field_new(q), 3))
    return [
        _row("lemma3", q, 3, None, "kernel_dim", rep.kernel_dim, 0, rep.ok),
        _row("lemma3", q, 3, None, "four_K_ge_dim_V", 4 * q ** 3, q ** 3 + q ** 2,
             rep.checks["four_K_ge_dim_V"]),
    ]


def section_zerolemma(q: int, n: int) -> list:
    f = field_new(q)
    cases = [("full", PointSet.full_space(f, n), None)]
    if q % 2:
        K, L = construct_almost_kakeya_odd(f, n)
        cases.append(("almost", K, L))
    rows = []
    for name, K, L in cases:
        rep = verify_zero_lemma(K, L, q)
        rows.append(_row("zerolemma", q, n, q, f"kernel_dim_{name}", rep.kernel_dim, 0, rep.ok))
        rows.append(_row("zerolemma", q, n, q, f"dim_V_le_codim_sum_{name}", rep.basis_size,
                         rep.checks["codim_sum"], rep.checks["dim_V_le_codim_sum"]))
    return rows


def section_inequality(q: int, n: int) -> list:
    a = theorem_inequality_audit(q, n)
    return [_row("inequality", q, n, None, "threshold", a.threshold, bounds(q, n).new_bound, a.ok)]


def plan(qmax: int, nmax: int) -> list[tuple]:
    """The ordered list of (section function, args) for the grid."""
    tasks: list[tuple] = []
    qs = [q for q in range(2, qmax + 1) if is_prime_power(q)]
    for q in qs:
        for n in range(2, nmax + 1):
            tasks.append((section_bounds, (q, n)))
            tasks.append((section_inequality, (q, n)))
            if q % 2 and q ** n <= 10 ** 4:
                tasks.append((section_almost, (q, n)))
            if q % 2 and q ** n <= 10 ** 3:
                tasks.append((section_recursive, (q, n)))
            if n <= 3:
                tasks.append((section_dimv, (q, n)))
            if n <= 3 and q <= 3:
                tasks.append((section_polytopes, (q, n)))
            if n == 2 and q <= 3:
                tasks.append((section_zerolemma, (q, n)))
        if q <= 5:
            tasks.append((section_minimal2d, (q,)))
        if q <= 3 and nmax >= 3:
            tasks.append((section_lemma3, (q,)))
    return tasks


def _run(task):
    fn, args = task
    return fn(*args)


def run_grid(qmax: int, nmax: int, workers: int | None = None) -> list[tuple]:
    tasks = plan(qmax, nmax)
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run, tasks))
    else:
        chunks = [_run(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def to_csv(rows: list[tuple]) -> str:
    lines = [",".join(HEADER)]
    lines.extend(",".join(r) for r in rows)
    return "\n".join(lines) + "\n"
