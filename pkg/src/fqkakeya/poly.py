"""
Sparse multivariate polynomials over a finite field, with Hasse calculus.

A polynomial is a mapping from exponent tuples (multi-indices) to nonzero
field elements.  Hasse derivatives are used throughout instead of ordinary
partial derivatives, since the latter vanish identically beyond the
characteristic:

    P(x + y) = sum_i P^(i)(x) y^i,   P^(i) = sum_a c_a * prod_j C(a_j, i_j) x^(a - i)
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    ParseError,
    PointNotOnLine,
    SizeLimitExceeded,
    ZeroPolynomial,
)
from .gf import Field

INFINITE = math.inf

MultiIndex = tuple  # tuple[int, ...]


def weight(i: Sequence[int]) -> int:
    return sum(i)


def multi_indices(n: int, w: int):
    """All multi-indices of length n and weight exactly w, lexicographically
    descending in the first coordinate."""
    if n == 0:
        if w == 0:
            yield ()
        return
    if n == 1:
        yield (w,)
        return
    for first in range(w, -1, -1):
        for rest in multi_indices(n - 1, w - first):
            yield (first,) + rest


def multi_indices_upto(n: int, w: int):
    """All multi-indices of weight < w, in weight-graded order."""
    for k in range(w):
        yield from multi_indices(n, k)


class UnivariatePolynomial:
    """Polynomial in one variable t; ``coeffs[k]`` is the coefficient of t^k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -INFINITE

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, t: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, t), c)
        return acc

    def hasse_derivative(self, j: int) -> "UnivariatePolynomial":
        f = self.field
        return UnivariatePolynomial(
            f, [f.mul(f.binom(k, j), c) for k, c in enumerate(self.coeffs) if k >= j]
        )

    def hasse_at(self, j: int, t0: int) -> int:
        """The j-th Hasse derivative evaluated at t0."""
        f = self.field
        acc = 0
        for k in range(len(self.coeffs) - 1, j - 1, -1):
            c = self.coeffs[k]
            term = f.mul(f.binom(k, j), c) if c else 0
            acc = f.add(f.mul(acc, t0), term)
        return acc

    def multiplicity(self, t0: int):
        """Order of vanishing at t0; INFINITE for the zero polynomial."""
        if not self.coeffs:
            return INFINITE
        for j in range(len(self.coeffs)):
            if self.hasse_at(j, t0):
                return j
        raise AssertionError("nonzero polynomial with all Hasse derivatives zero")  # pragma: no cover

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePolynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                parts.append(str(c) if k == 0 else f"{c}*t^{k}")
        return "+".join(parts)


def _umul(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


class Polynomial:
    """Sparse polynomial in ``nvars`` variables over ``field``.

    Values are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(alpha)
                if len(alpha) != nvars:
                    raise DimensionMismatch(f"exponent {alpha} has length != {nvars}")
                if any(a < 0 for a in alpha):
                    raise ValueError(f"negative exponent in {alpha}")
                c = int(c)
                if not 0 <= c < field.q:
                    raise ValueError(f"coefficient {c} is not an element of {field}")
                if c:
                    clean[alpha] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Polynomial":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: Field, nvars: int, c: int) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, field: Field, alpha: Sequence[int], c: int = 1) -> "Polynomial":
        return cls(field, len(alpha), {tuple(alpha): c})

    @classmethod
    def variable(cls, field: Field, nvars: int, j: int) -> "Polynomial":
        """The coordinate function x_{j+1} (j is 0-based)."""
        e = [0] * nvars
        e[j] = 1
        return cls(field, nvars, {tuple(e): 1})

    # -- basic structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        if not self.terms:
            return -INFINITE
        return max(sum(a) for a in self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _same_ring(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise DimensionMismatch("polynomials live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        f = self.field
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = f.add(t.get(a, 0), c)
        return Polynomial(f, self.nvars, t)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, self.nvars, {a: f.neg(c) for a, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        f = self.field
        return Polynomial(f, self.nvars, {a: f.mul(c, v) for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same_ring(other)
        f = self.field
        t: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                t[e] = f.add(t.get(e, 0), f.mul(c, d))
        return Polynomial(f, self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus ------------------------------------------------------------------

    def _check_point(self, point):
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of dimension {len(point)} for {self.nvars} variables")

    def _power_table(self, point) -> list[list[int]]:
        f = self.field
        top = [0] * self.nvars
        for a in self.terms:
            for j, e in enumerate(a):
                if e > top[j]:
                    top[j] = e
        table = []
        for j, x in enumerate(point):
            row = [1]
            for _ in range(top[j]):
                row.append(f.mul(row[-1], x))
            table.append(row)
        return table

    def evaluate(self, point: Sequence[int]) -> int:
        self._check_point(point)
        f = self.field
        pw = self._power_table(point)
        acc = 0
        for a, c in self.terms.items():
            v = c
            for j, e in enumerate(a):
                if e:
                    v = f.mul(v, pw[j][e])
            acc = f.add(acc, v)
        return acc

    def hasse_derivative(self, i: Sequence[int]) -> "Polynomial":
        """The i-th Hasse derivative."""
        i = tuple(i)
        if len(i) != self.nvars:
            raise DimensionMismatch(f"multi-index {i} for {self.nvars} variables")
        f = self.field
        out: dict = {}
        for a, c in self.terms.items():
            coef = c
            for aj, ij in zip(a, i):
                if aj < ij:
                    coef = 0
                    break
                if ij:
                    coef = f.mul(coef, f.binom(aj, ij))
                    if not coef:
                        break
            if coef:
                e = tuple(aj - ij for aj, ij in zip(a, i))
                out[e] = f.add(out.get(e, 0), coef)
        return Polynomial(f, self.nvars, out)

    def _hasse_value(self, i, pw) -> int:
        # P^(i)(p) without materializing P^(i); pw is the power table of p
        f = self.field
        acc = 0
        for a, c in self.terms.items():
            v = c
            for j, (aj, ij) in enumerate(zip(a, i)):
                if aj < ij:
                    v = 0
                    break
                if ij:
                    v = f.mul(v, f.binom(aj, ij))
                if aj > ij:
                    v = f.mul(v, pw[j][aj - ij])
                if not v:
                    break
            if v:
                acc = f.add(acc, v)
        return acc

    def multiplicity(self, point: Sequence[int]):
        """Largest m with P^(i)(point) = 0 for all |i| < m; INFINITE for P = 0."""
        self._check_point(point)
        if not self.terms:
            return INFINITE
        pw = self._power_table(point)
        for w in range(self.degree + 1):
            for i in multi_indices(self.nvars, w):
                if self._hasse_value(i, pw):
                    return w
        raise AssertionError("nonzero polynomial with all Hasse derivatives zero")  # pragma: no cover

    def homogeneous_component(self, k: int) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {a: c for a, c in self.terms.items() if sum(a) == k})

    def restrict_to_line(self, line) -> UnivariatePolynomial:
        """P(a + b t) for the line's own parameterization (a = line.base, b = line.dir)."""
        a, b = line.base, line.dir
        if len(a) != self.nvars:
            raise DimensionMismatch(f"line in dimension {len(a)} for {self.nvars} variables")
        f = self.field
        top = [0] * self.nvars
        for alpha in self.terms:
            for j, e in enumerate(alpha):
                top[j] = max(top[j], e)
        powers = []
        for j in range(self.nvars):
            lin = [a[j], b[j]]
            row = [[1]]
            for _ in range(top[j]):
                row.append(_umul(f, row[-1], lin))
            powers.append(row)
        out: list[int] = []
        for alpha, c in self.terms.items():
            u = [c]
            for j, e in enumerate(alpha):
                if e:
                    u = _umul(f, u, powers[j][e])
            if len(u) > len(out):
                out.extend([0] * (len(u) - len(out)))
            for k, v in enumerate(u):
                if v:
                    out[k] = f.add(out[k], v)
        return UnivariatePolynomial(f, out)

    def mult_along_line(self, line, point: Sequence[int]):
        """Multiplicity of P restricted to ``line`` at the parameter of ``point``."""
        t0 = line.parameter_of(point) if len(point) == len(line.base) else None
        if t0 is None:
            raise PointNotOnLine(f"{tuple(point)} is not on {line}")
        return self.restrict_to_line(line).multiplicity(t0)

    # -- text format -----------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            factors = [str(c)] + [f"x{j + 1}^{e}" for j, e in enumerate(a) if e]
            parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r} over {self.field!r})"

    @classmethod
    def from_text(cls, field: Field, text: str, nvars: int | None = None) -> "Polynomial":
        """Parse ``coeff*x1^a1*...*xn^an`` terms joined by ``+``.

        ``^1`` and unit coefficients may be omitted.  Coefficients are
        canonical element encodings.  ``nvars`` defaults to the largest
        variable index that appears (at least 1).
        """
        raw = []
        top = 0
        body = text.replace(" ", "")
        if not body:
            raise ParseError("empty polynomial")
        for term in body.split("+"):
            if not term:
                raise ParseError(f"empty term in {text!r}")
            coef = 1
            exps: dict[int, int] = {}
            for factor in term.split("*"):
                if factor.isdigit():
                    c = int(factor)
                    if c >= field.q:
                        raise ParseError(f"coefficient {c} is not an element of {field}")
                    coef = field.mul(coef, c)
                    continue
                if not factor.startswith("x"):
                    raise ParseError(f"bad factor {factor!r}")
                name, _, power = factor[1:].partition("^")
                if not name.isdigit() or int(name) < 1 or (power and not power.isdigit()):
                    raise ParseError(f"bad factor {factor!r}")
                j = int(name)
                exps[j] = exps.get(j, 0) + (int(power) if power else 1)
                top = max(top, j)
            raw.append((coef, exps))
        if nvars is None:
            nvars = max(top, 1)
        elif top > nvars:
            raise ParseError(f"variable x{top} exceeds nvars={nvars}")
        terms: dict = {}
        for coef, exps in raw:
            a = tuple(exps.get(j + 1, 0) for j in range(nvars))
            terms[a] = field.add(terms.get(a, 0), coef)
        return cls(field, nvars, terms)


def hasse_derivative(P: Polynomial, i: Sequence[int]) -> Polynomial:
    return P.hasse_derivative(i)


def multiplicity(P: Polynomial, point: Sequence[int]):
    return P.multiplicity(point)


def restrict_to_line(P: Polynomial, line) -> UnivariatePolynomial:
    return P.restrict_to_line(line)


def mult_along_line(P: Polynomial, line, point: Sequence[int]):
    return P.mult_along_line(line, point)


def homogeneous_component(P: Polynomial, k: int) -> Polynomial:
    return P.homogeneous_component(k)


def expand_shift_oracle(P: Polynomial) -> dict:
    """Hasse derivatives read off from a literal expansion of P(x + y).

    Expands in 2n variables (x_1..x_n, y_1..y_n) and collects the
    coefficient of each y^i.  Every multi-index of weight <= deg P is
    present in the result, mapped to the zero polynomial when nothing
    collects there.
    """
    if len(P.terms) > 200 or (not P.is_zero() and P.degree > 12):
        raise SizeLimitExceeded("expand_shift_oracle needs <= 200 terms and degree <= 12")
    f, n = P.field, P.nvars
    shifted = [
        Polynomial.variable(f, 2 * n, j) + Polynomial.variable(f, 2 * n, n + j) for j in range(n)
    ]
    total = Polynomial.zero(f, 2 * n)
    for a, c in P.terms.items():
        term = Polynomial.constant(f, 2 * n, c)
        for j, e in enumerate(a):
            if e:
                term = term * shifted[j] ** e
        total = total + term
    collected: dict = {}
    for e, c in total.terms.items():
        collected.setdefault(e[n:], {})[e[:n]] = c
    d = 0 if P.is_zero() else P.degree
    out = {}
    for w in range(d + 1):
        for i in multi_indices(n, w):
            out[i] = Polynomial(f, n, collected.get(i, {}))
    return out


class SchwartzZippelAudit(NamedTuple):
    sum: int
    bound: int
    ok: bool


def schwartz_zippel_audit(P: Polynomial, S: Iterable[int]) -> SchwartzZippelAudit:
    """Compare sum_{p in S^n} mult(P, p) with deg(P) * |S|^(n-1)."""
    if P.is_zero():
        raise ZeroPolynomial("the multiplicity sum is unbounded for the zero polynomial")
    S = sorted(set(S))
    n = P.nvars
    if not S:
        raise ValueError("S must be nonempty")
    if len(S) ** n > 10 ** 6:
        raise EnumerationTooLarge(f"|S|^n = {len(S) ** n} points")
    total = 0
    for point in itertools.product(S, repeat=n):
        total += P.multiplicity(point)
    bound = P.degree * len(S) ** (n - 1)
    return SchwartzZippelAudit(total, bound, total <= bound)


def random_polynomial(field: Field, nvars: int, nterms: int, max_degree: int, rng: random.Random) -> Polynomial:
    """Random polynomial with at most ``nterms`` terms of total degree <= max_degree."""
    terms = {}
    for _ in range(nterms):
        w = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, w) for _ in range(nvars - 1))
        a = tuple(b - c for b, c in zip(cuts + [w], [0] + cuts))
        terms[a] = rng.randrange(field.q)
    return Polynomial(field, nvars, terms)
