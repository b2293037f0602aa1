"""
Finite fields GF(p^k) with elements encoded as integers 0..q-1.

An element e of an extension field stands for the polynomial whose base-p
digits are its coefficients (digit i is the coefficient of x^i), reduced
modulo a fixed monic irreducible of degree k.  For k = 1 the encoding is
just the residue mod p.

Most of the package passes elements around as plain ints and calls
``Field`` methods on them.  ``FieldElement`` wraps an int together with
its field for code that wants operator syntax.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, MixedFields, NotAPrimePower

MAX_ORDER = 2 ** 20
# Extension fields up to this order get log/exp tables for multiplication.
_TABLE_LIMIT = 2 ** 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise NotAPrimePower."""
    if not isinstance(q, int) or q < 2:
        raise NotAPrimePower(f"{q!r} is not a prime power")
    p = None
    f = 2
    while f * f <= q:
        if q % f == 0:
            p = f
            break
        f += 1
    if p is None:
        return q, 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotAPrimePower(f"{q} has at least two distinct prime factors")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotAPrimePower:
        return False
    return True


# -- polynomials over F_p, as coefficient lists (constant term first) --------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            shift = top - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
    return _trim(a[:dm])


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _polymod_p(list(poly), divisor, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates are compared coefficient by coefficient starting from the
    constant term.
    """
    for low in itertools.product(range(p), repeat=k):
        poly = tuple(low) + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field of order q = p**k.

    Use :func:`field_new` rather than the constructor so equal fields are
    shared.  Elements are ints in ``range(q)``.
    """

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p) or k < 1:
            raise NotAPrimePower(f"invalid characteristic/degree ({p}, {k})")
        q = p ** k
        if q > MAX_ORDER:
            raise ValueError(f"fields of order > 2^20 are not supported (q={q})")
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = smallest_irreducible(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._pascal = [[math.comb(a, b) % p for b in range(a + 1)] for a in range(p)] if p <= 64 else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_table: list[list[int]] | None = None
        if k > 1 and q <= _TABLE_LIMIT:
            self._build_tables()

    # -- identity -------------------------------------------------------------

    @property
    def key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={list(self.modulus)})"

    # -- encoding -------------------------------------------------------------

    def digits(self, e: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            e, d = divmod(e, p)
            out.append(d)
        return out

    def from_digits(self, digits) -> int:
        e = 0
        for d in reversed(list(digits)):
            e = e * self.p + d
        return e

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, self._check(value))

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self}")
        return a

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- arithmetic ------------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_polymod_p(prod, list(self.modulus), p))

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        return self.from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = {f for f in range(2, order + 1) if order % f == 0 and _is_prime(f)}
        for g in range(2, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log
        if q <= 256:
            self._add_table = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits((-d) % self.p for d in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def binom(self, m: int, r: int) -> int:
        """C(m, r) mod p via Lucas' theorem, as an element of the prime subfield."""
        if r < 0 or r > m:
            return 0
        p = self.p
        result = 1
        while r:
            (m, mi), (r, ri) = divmod(m, p), divmod(r, p)
            if ri > mi:
                return 0
            c = self._pascal[mi][ri] if self._pascal is not None else math.comb(mi, ri) % p
            result = result * c % p
        return result

    def to_json(self) -> dict:
        return {"q": self.q, "modulus": list(self.modulus) if self.modulus else None}


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus) -> Field:
    return Field(p, k, modulus)


def field_new(q: int, modulus=None) -> Field:
    """The field of order q.  Raises NotAPrimePower for q < 2 or composite
    non-prime-powers."""
    p, k = prime_power(q)
    if k == 1:
        modulus = None
    elif modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_field(p, k, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine a field element with {type(other).__name__}")

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        b = self._other(other)
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} in {self.field!r}"
