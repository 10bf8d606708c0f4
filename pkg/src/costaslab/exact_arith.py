"""Exact rational and real quadratic-field arithmetic.

Rationals are reduced fractions over unbounded integers (``fractions.Fraction``);
irrational quantities are quadratic surds a + b*sqrt(d) with squarefree d >= 2.
Nothing in this module touches floating point: comparisons of surds are done by
sign analysis and exact squaring, so there is no precision parameter anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "Rational",
    "QuadExt",
    "RealValue",
    "parse_rational",
    "format_rational",
    "squarefree_decompose",
    "sqrt_rational",
    "solve_quadratic",
]

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "num/den" form (a bare integer is also accepted)."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation is not accepted: {text!r}")
    return Fraction(text)


def format_rational(q) -> str:
    """Serialize a rational as "num/den", never as a decimal."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s**2 * d with d squarefree; returns (s, d)."""
    if n < 1:
        raise ValueError("squarefree_decompose requires n >= 1")
    s, d, m = 1, 1, n
    f = 2
    while f * f <= m:
        if m % f == 0:
            k = 0
            while m % f == 0:
                m //= f
                k += 1
            s *= f ** (k // 2)
            if k % 2:
                d *= f
        f += 1 if f == 2 else 2
    d *= m
    return s, d


def sqrt_rational(q) -> "RealValue":
    """Exact square root of a non-negative rational.

    Returns a Fraction when q is a perfect rational square, otherwise the
    surd (s/den)*sqrt(d) as a QuadExt.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of negative rational")
    if q == 0:
        return Fraction(0)
    s, d = squarefree_decompose(q.numerator * q.denominator)
    if d == 1:
        return Fraction(s, q.denominator)
    return QuadExt(d, 0, Fraction(s, q.denominator))


class QuadExt:
    """A number a + b*sqrt(d) in the real quadratic field Q(sqrt(d)).

    d is a fixed squarefree integer >= 2 per value; mixing distinct radicands
    is rejected rather than promoted to a biquadratic field.  Values are
    immutable and hashable, with hash/equality consistent with Fraction when
    b == 0.
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a=0, b=0):
        d = int(d)
        if d < 2 or squarefree_decompose(d)[0] != 1:
            raise ValueError(f"radicand must be squarefree and >= 2, got {d}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt values are immutable")

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.d, self.a, -self.b)

    def _pair(self, other):
        """(self, other) rewritten over a common radicand, or None."""
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self, other
            if other.b == 0:
                return self, QuadExt(self.d, other.a)
            if self.b == 0:
                return QuadExt(other.d, self.a), other
            raise ValueError(f"mismatched radicands: {self.d} vs {other.d}")
        if isinstance(other, (int, Fraction)):
            return self, QuadExt(self.d, other)
        return None

    # -- ring/field operations --------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadExt(s.d, s.a + o.a, s.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.d, -self.a, -self.b)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadExt(s.d, s.a - o.a, s.b - o.b)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadExt(s.d, o.a - s.a, o.b - s.b)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadExt(
            s.d,
            s.a * o.a + s.b * o.b * s.d,
            s.a * o.b + s.b * o.a,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a**2 - b**2*d; zero iff the value is zero."""
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return s * o.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return o * s.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt(self.d, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- exact order -------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), by case split and squaring."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a**2 against b**2*d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def _diff_sign(self, other) -> int:
        pair = self._pair(other)
        if pair is None:
            raise TypeError(f"cannot compare {self!r} with {other!r}")
        s, o = pair
        return (s - o).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self.a == other.a and self.b == other.b
            # distinct squarefree radicands: values equal only if both rational
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return False
        return NotImplemented

    def __lt__(self, other):
        return self._diff_sign(other) < 0

    def __le__(self, other):
        return self._diff_sign(other) <= 0

    def __gt__(self, other):
        return self._diff_sign(other) > 0

    def __ge__(self, other):
        return self._diff_sign(other) >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __repr__(self):
        return f"QuadExt(d={self.d}, a={self.a}, b={self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a} + {self.b}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "d": self.d,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadExt":
        return cls(obj["d"], parse_rational(obj["a"]), parse_rational(obj["b"]))


RealValue = Union[Fraction, QuadExt]


def solve_quadratic(A, B, C):
    """Exact real roots of A*y**2 + B*y + C = 0 with rational coefficients.

    Returns the root pair (each a Fraction or a QuadExt), or None when the
    discriminant is negative.  A double root is returned twice.
    """
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    if A == 0:
        raise ValueError("leading coefficient is zero: not a quadratic")
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    root = sqrt_rational(disc)
    if isinstance(root, Fraction):
        return ((-B + root) / (2 * A), (-B - root) / (2 * A))
    a0 = -B / (2 * A)
    b0 = root.b / (2 * A)
    return (QuadExt(root.d, a0, b0), QuadExt(root.d, a0, -b0))
