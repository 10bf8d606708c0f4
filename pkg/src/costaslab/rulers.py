"""Sidon sets / Golomb rulers: verification, the four classic finite
constructions, and the greedy dense rational ruler.

Marks are exact: integers for the finite constructions, Fractions for the
greedy interval construction.  The verifier exists in both the
pairwise-difference and pairwise-sum forms so the two can cross-check each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import interval_rationals, naturals, rationals_in
from .finite_field import ExtFieldContext, euler_phi, is_prime, is_primitive

__all__ = [
    "CandidateCapExceeded",
    "GreedyLogEntry",
    "verify_sidon",
    "verify_sidon_sums",
    "erdos_turan",
    "ruzsa_lindstrom",
    "bose_chowla",
    "bose_chowla_difference_check",
    "quadratic_ruler",
    "greedy_dense",
    "dense_schedule",
    "optimality_report",
]

GREEDY_STEP_CAP = 10**6


class CandidateCapExceeded(RuntimeError):
    """The per-step candidate cap tripped; acceptance is guaranteed
    mathematically, so this signals an enumeration bug, not a dead end."""


def verify_sidon(marks):
    """Difference form: all C(m,2) pairwise differences distinct.

    Returns (ok, quadruple); the quadruple (x1, x2, x3, x4) satisfies
    x1 + x2 = x3 + x4 with {x1, x2} != {x3, x4} and is None when ok.
    """
    marks = sorted(marks)
    if len(set(marks)) != len(marks):
        raise ValueError("duplicate marks")
    seen = {}
    for j in range(1, len(marks)):
        for i in range(j):
            diff = marks[j] - marks[i]
            if diff in seen:
                i2, j2 = seen[diff]
                # marks[j] - marks[i] == marks[j2] - marks[i2]
                return False, (marks[i2], marks[j], marks[j2], marks[i])
            seen[diff] = (i, j)
    return True, None


def verify_sidon_sums(marks):
    """Sum form: pairwise sums x1 + x2 (i <= j) all distinct."""
    marks = sorted(marks)
    if len(set(marks)) != len(marks):
        raise ValueError("duplicate marks")
    seen = {}
    for j in range(len(marks)):
        for i in range(j + 1):
            s = marks[i] + marks[j]
            if s in seen:
                i2, j2 = seen[s]
                return False, (marks[i], marks[j], marks[i2], marks[j2])
            seen[s] = (i, j)
    return True, None


def _distinct_mod(marks, modulus):
    """All ordered pairwise differences distinct modulo `modulus`."""
    diffs = set()
    for a in marks:
        for b in marks:
            if a == b:
                continue
            d = (a - b) % modulus
            if d in diffs:
                return False
            diffs.add(d)
    return True


def erdos_turan(p: int) -> list[int]:
    """Marks 2pk + (k**2 mod p) for k in [0, p-1]; p markings, length < 2p**2 + p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [2 * p * k + (k * k % p) for k in range(p)]


def ruzsa_lindstrom(p: int, g: int, s: int) -> list[int]:
    """Marks (p*s*k + (p-1)*g**k) mod p(p-1), k in [0, p-2], sorted.

    The index k = p-1 would duplicate k = 0 mod p(p-1), so it is dropped:
    the construction yields p - 1 distinct marks.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ctx = ExtFieldContext(p)
    if not is_primitive(ctx.from_int(g % p)):
        raise ValueError(f"{g} is not a primitive root mod {p}")
    if math.gcd(s, p - 1) != 1:
        raise ValueError(f"s = {s} is not coprime to p - 1 = {p - 1}")
    mod = p * (p - 1)
    return sorted((p * s * k + (p - 1) * pow(g, k, p)) % mod for k in range(p - 1))


def _bose_chowla_setup(p: int, m: int):
    """GF(q**2) with its subfield GF(q) and the smallest primitive element."""
    q = p**m
    if q * q > 2**16:
        raise ValueError("Bose-Chowla capped at q**2 <= 2**16")
    ctx = ExtFieldContext(p, 2 * m)
    g = next(e for e in ctx.elements() if not e.is_zero() and is_primitive(e))
    return q, ctx, g


def bose_chowla(p: int, m: int = 1) -> list[int]:
    """The q exponents i in [1, q**2 - 2] with g**i - g in GF(q), ascending.

    GF(q) sits inside GF(q**2) as the subfield fixed by the Frobenius
    x -> x**q; g is the smallest primitive element of GF(q**2)."""
    q, ctx, g = _bose_chowla_setup(p, m)
    marks = []
    acc = ctx.one()
    for i in range(1, q * q - 1):
        acc = acc * g
        diff = acc - g
        if diff**q == diff:  # fixed by Frobenius <=> in GF(q)
            marks.append(i)
    assert len(marks) == q
    return marks


def bose_chowla_difference_check(p: int, m: int = 1) -> bool:
    """Exact set equality: the q(q-1) pairwise differences of the marks,
    mod q**2 - 1, are precisely the nonzero residues not divisible by q + 1."""
    q = p**m
    marks = bose_chowla(p, m)
    mod = q * q - 1
    diffs = set()
    for a in marks:
        for b in marks:
            if a != b:
                diffs.add((a - b) % mod)
    expected = {r for r in range(1, mod) if r % (q + 1) != 0}
    return diffs == expected


def quadratic_ruler(n: int, a: int) -> list[int]:
    """Marks a*n*k**2 + k, k in [0, n-1]; works for every n, length a*n*(n-1)**2 + (n-1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if a not in (1, 2):
        raise ValueError("a must be 1 or 2")
    return [a * n * k * k + k for k in range(n)]


# -- greedy dense rulers ---------------------------------------------------


@dataclass
class GreedyLogEntry:
    candidate: Fraction
    accepted: bool
    conflict: tuple | None = None  # (x1, x2, x3, x4) with x1 + x2 = x3 + x4
    interval: tuple | None = None  # (lo, hi) schedule interval, dense mode


class _SidonAccumulator:
    """Incrementally maintained Sidon set with conflict reporting."""

    def __init__(self):
        self.marks = []
        self._members = set()
        self.diffs = {}  # |difference| -> (smaller mark, larger mark)

    def __contains__(self, x):
        return x in self._members

    def conflict(self, x):
        """First conflict created by adding x, or None if x keeps the set Sidon."""
        new = {}
        for m in self.marks:
            d = abs(x - m)
            pair = self.diffs.get(d) or new.get(d)
            if pair is not None:
                a, b = pair
                # x - m == b - a  (up to orientation)  =>  x + a == b + m
                return (x, a, b, m) if x + a == b + m else (x, b, a, m)
            new[d] = (min(x, m), max(x, m))
        return None

    def add(self, x):
        for m in self.marks:
            d = abs(x - m)
            self.diffs[d] = (min(x, m), max(x, m))
        self.marks.append(x)
        self._members.add(x)


def dense_schedule(lo, hi):
    """The density schedule I_1, I_2, ...: level N covers the interval
    clipped to [-2**N, 2**N] by consecutive half-open subintervals of
    length 2**-N, left to right; levels are concatenated in order."""
    level = 1
    while True:
        width = Fraction(1, 2**level)
        clip_lo = max(lo, Fraction(-(2**level))) if lo is not None else Fraction(-(2**level))
        clip_hi = min(hi, Fraction(2**level)) if hi is not None else Fraction(2**level)
        cur = clip_lo
        while cur < clip_hi:
            yield (cur, min(cur + width, clip_hi))
            cur += width
        level += 1


def greedy_dense(
    interval=(Fraction(0), Fraction(1)),
    count: int = 1,
    dense: bool = False,
    integers: bool = False,
    step_cap: int = GREEDY_STEP_CAP,
):
    """First-fit greedy Golomb ruler over the canonical enumeration of
    Q intersected with `interval` (or over 1, 2, 3, ... in integer mode).

    In dense mode the (m+1)-th accepted mark is constrained to the schedule
    interval I_{m+1}, which forces the limit set to be dense in the interval.
    Returns (marks, log).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    lo, hi = interval if interval is not None else (None, None)
    acc = _SidonAccumulator()
    log = []

    if not dense:
        stream = naturals() if integers else interval_rationals(lo, hi)
        tried = 0
        for x in stream:
            tried += 1
            if tried > step_cap:
                raise CandidateCapExceeded(f"{step_cap} candidates tried")
            if x in acc:
                continue
            conflict = acc.conflict(x)
            if conflict is None:
                acc.add(x)
                log.append(GreedyLogEntry(x, True))
                if len(acc.marks) == count:
                    break
            else:
                log.append(GreedyLogEntry(x, False, conflict=conflict))
        return acc.marks, log

    if integers:
        raise ValueError("dense mode applies to interval enumerations only")
    schedule = dense_schedule(lo, hi)
    for _ in range(count):
        iv_lo, iv_hi = next(schedule)
        tried = 0
        for x in rationals_in(iv_lo, iv_hi):
            tried += 1
            if tried > step_cap:
                raise CandidateCapExceeded(
                    f"{step_cap} candidates tried in [{iv_lo}, {iv_hi})"
                )
            if x in acc:
                continue
            conflict = acc.conflict(x)
            if conflict is None:
                acc.add(x)
                log.append(GreedyLogEntry(x, True, interval=(iv_lo, iv_hi)))
                break
            log.append(
                GreedyLogEntry(x, False, conflict=conflict, interval=(iv_lo, iv_hi))
            )
    return acc.marks, log


def optimality_report(marks) -> dict:
    """m, length, and the m/sqrt(length) ratio against the m ~ sqrt(n)
    optimality conjecture; the ratio is a 6-digit decimal string (reporting
    only -- everything else stays exact)."""
    marks = sorted(marks)
    if not marks:
        raise ValueError("empty ruler")
    m = len(marks)
    length = marks[-1] - marks[0]
    if length == 0:
        ratio = "inf"
    else:
        ratio = f"{m / math.sqrt(length):.6f}"
    return {"m": m, "length": length, "ratio": ratio}
