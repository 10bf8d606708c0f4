"""Arithmetic in GF(p) and GF(p^m) at desk scale (q <= 2**20).

Elements are coefficient vectors over GF(p), constant term first, reduced
modulo a monic irreducible polynomial.  The modulus is always the
lexicographically smallest monic irreducible of its degree (coefficients
compared constant-term first), so field representations -- and everything
derived from them, like the Golomb construction -- are reproducible
byte-for-byte.
"""

from __future__ import annotations

import itertools

__all__ = [
    "ExtFieldContext",
    "FieldElem",
    "find_irreducible",
    "is_primitive",
    "primitive_elements",
    "dlog_table",
    "is_prime",
    "prime_factors",
    "euler_phi",
]

_MAX_Q = 2**20
_MAX_TABLE_Q = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1 if f == 2 else 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient tuples a, b and reduce mod (modulus, p).

    modulus is monic of degree m, constant term first, length m + 1.
    """
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x**m == -(modulus without leading term)
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(m):
                prod[deg - m + j] = (prod[deg - m + j] - c * modulus[j]) % p
    return tuple(prod[:m]) if len(prod) >= m else tuple(prod) + (0,) * (m - len(prod))


def _poly_rem(a, b, p):
    """Remainder of polynomial a modulo polynomial b over GF(p) (dense lists)."""
    a = list(a)
    db = len(b) - 1
    while len(b) > 1 and b[-1] == 0:
        b = b[:-1]
        db -= 1
    inv_lead = pow(b[-1], -1, p)
    for deg in range(len(a) - 1, db - 1, -1):
        c = a[deg]
        if c:
            factor = (c * inv_lead) % p
            for j in range(db + 1):
                a[deg - db + j] = (a[deg - db + j] - factor * b[j]) % p
    return a[:db]


def _is_irreducible(coeffs, p):
    """coeffs: monic polynomial, constant first, degree m >= 1."""
    m = len(coeffs) - 1
    if coeffs[0] == 0:  # root at 0
        return m == 1
    for r in range(p):  # linear factors
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return m == 1
    # trial division by every monic polynomial of degree 2..m//2
    for deg in range(2, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not any(_poly_rem(coeffs, divisor, p)):
                return False
    return True


def find_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Coefficients are compared constant-term first.  For m == 1 the
    placeholder x is returned; degree-1 arithmetic never reduces by it.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be >= 1")
    if m == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=m):
        coeffs = list(tail) + [1]
        if _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # unreachable


class ExtFieldContext:
    """The field GF(p^m) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("degree must be >= 1")
        q = p**m
        if q > _MAX_Q:
            raise ValueError(f"q = {q} exceeds the desk-scale bound {_MAX_Q}")
        if modulus is None:
            modulus = find_irreducible(p, m)
        modulus = [c % p for c in modulus]
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m > 1 and not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = tuple(modulus)

    def __eq__(self, other):
        return (
            isinstance(other, ExtFieldContext)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"ExtFieldContext(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def element(self, coeffs) -> "FieldElem":
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.m:
            coeffs = coeffs + (0,) * (self.m - len(coeffs))
        return FieldElem(self, coeffs)

    def from_int(self, e: int) -> "FieldElem":
        """Decode the base-p integer encoding (constant digit least significant)."""
        if not 0 <= e < self.q:
            raise ValueError(f"encoding {e} out of range [0, {self.q})")
        digits = []
        for _ in range(self.m):
            digits.append(e % self.p)
            e //= self.p
        return FieldElem(self, tuple(digits))

    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.m)

    def one(self) -> "FieldElem":
        return FieldElem(self, (1,) + (0,) * (self.m - 1))

    def gen(self) -> "FieldElem":
        """The class of x (for m == 1, the element p does not exist; use from_int)."""
        if self.m == 1:
            raise ValueError("GF(p) has no polynomial generator; pick an element")
        return self.from_int(self.p)

    def elements(self):
        """All q elements, ascending in coefficient (integer-encoding) order."""
        return (self.from_int(e) for e in range(self.q))


class FieldElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ExtFieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElem) or other.ctx != self.ctx:
            raise ValueError("field context mismatch")

    def to_int(self) -> int:
        e = 0
        for c in reversed(self.coeffs):
            e = e * self.ctx.p + c
        return e

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElem(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElem(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(
            self.ctx,
            _poly_mulmod(self.coeffs, other.coeffs, self.ctx.modulus, self.ctx.p),
        )

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.ctx.q - 2)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"FieldElem({self.to_int()} in GF({self.ctx.q}))"


def is_primitive(a: FieldElem) -> bool:
    """True iff a generates the multiplicative group of its field."""
    if a.is_zero():
        raise ValueError("zero element has no multiplicative order")
    n = a.ctx.q - 1
    one = a.ctx.one()
    for ell in prime_factors(n):
        if a ** (n // ell) == one:
            return False
    return True


def primitive_elements(ctx: ExtFieldContext) -> list[FieldElem]:
    """All phi(q-1) primitive elements, ascending in coefficient order."""
    if ctx.q > _MAX_TABLE_Q:
        raise ValueError(f"full enumeration capped at q <= {_MAX_TABLE_Q}")
    out = [e for e in ctx.elements() if not e.is_zero() and is_primitive(e)]
    assert len(out) == euler_phi(ctx.q - 1)
    return out


def dlog_table(ctx: ExtFieldContext, g: FieldElem) -> dict:
    """Map each nonzero element to its exponent in [0, q-2] w.r.t. base g."""
    if ctx.q > _MAX_TABLE_Q:
        raise ValueError(f"discrete-log tables capped at q <= {_MAX_TABLE_Q}")
    if not is_primitive(g):
        raise ValueError("base is not primitive")
    table = {}
    acc = ctx.one()
    for e in range(ctx.q - 1):
        table[acc] = e
        acc = acc * g
    return table
