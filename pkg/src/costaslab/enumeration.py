"""Canonical deterministic enumerations of the rationals.

Everything downstream that needs to "enumerate Q" (greedy rulers, cloud
construction) goes through these generators, so results are reproducible
byte-for-byte across runs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

__all__ = [
    "calkin_wilf",
    "all_rationals",
    "interval_rationals",
    "unit_interval_rationals",
    "rationals_in",
    "naturals",
]


def calkin_wilf():
    """The positive rationals, each exactly once: 1, 1/2, 2, 1/3, 3/2, ..."""
    q = Fraction(1)
    while True:
        yield q
        q = 1 / (2 * (q.numerator // q.denominator) + 1 - q)


def all_rationals():
    """All of Q: 0, then +/- the Calkin-Wilf sequence interleaved."""
    yield Fraction(0)
    for q in calkin_wilf():
        yield q
        yield -q


def naturals():
    """1, 2, 3, ... as Fractions (integer greedy-ruler mode)."""
    return (Fraction(n) for n in itertools.count(1))


def interval_rationals(lo, hi):
    """Q intersected with an interval, endpoints first.

    lo/hi are Fractions or None for an unbounded end.  Bounded intervals are
    enumerated as lo, hi, then the filtered affine image lo + (hi-lo)*t of
    the Calkin-Wilf sequence (t < 1); half-lines shift the sequence from the
    finite endpoint.
    """
    if lo is not None and hi is not None:
        if not lo < hi:
            raise ValueError("empty interval")
        yield Fraction(lo)
        yield Fraction(hi)
        span = hi - lo
        for t in calkin_wilf():
            if t < 1:
                yield lo + span * t
    elif lo is not None:
        yield Fraction(lo)
        for t in calkin_wilf():
            yield lo + t
    elif hi is not None:
        yield Fraction(hi)
        for t in calkin_wilf():
            yield hi - t
    else:
        yield from all_rationals()


def unit_interval_rationals():
    """Q in [0, 1): 0, 1/2, 1/3, 2/3, 1/4, ... (cloud-domain enumeration)."""
    yield Fraction(0)
    for t in calkin_wilf():
        if t < 1:
            yield t


def rationals_in(lo, hi):
    """Reduced rationals in the half-open interval [lo, hi), ordered by
    increasing denominator then numerator (in-cell candidate streams)."""
    lo, hi = Fraction(lo), Fraction(hi)
    for den in itertools.count(1):
        # smallest num with num/den >= lo
        num = -((-lo.numerator * den) // lo.denominator)
        while Fraction(num, den) < hi:
            if gcd(num, den) == 1:
                yield Fraction(num, den)
            num += 1
