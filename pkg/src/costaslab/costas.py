"""Costas permutations: verification, the Welch and Golomb constructions,
and exhaustive enumeration at small orders.

A permutation of order n is a 1-based value sequence f(1..n).  The verifier
is the classic difference-triangle test: for every lag t the differences
f(i+t) - f(i) must be pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .finite_field import (
    ExtFieldContext,
    FieldElem,
    dlog_table,
    is_prime,
    is_primitive,
)

__all__ = [
    "CostasReport",
    "verify_costas",
    "welch",
    "golomb",
    "golomb_pm",
    "enumerate_costas",
]

ENUMERATION_CAP = 10


@dataclass
class CostasReport:
    ok: bool
    violations: list = field(default_factory=list)  # (t, i, j) with i < j


def _check_permutation(values):
    values = list(values)
    n = len(values)
    if sorted(values) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {values}")
    return values


def verify_costas(values) -> CostasReport:
    """Difference-triangle test; reports every violating (t, i, j), 1-based."""
    values = _check_permutation(values)
    n = len(values)
    violations = []
    for t in range(1, n):
        seen = {}
        for i in range(n - t):
            diff = values[i + t] - values[i]
            if diff in seen:
                violations.extend((t, j + 1, i + 1) for j in seen[diff])
                seen[diff].append(i)
            else:
                seen[diff] = [i]
    return CostasReport(ok=not violations, violations=violations)


def welch(p: int, alpha: int, c: int) -> list[int]:
    """Exponential permutation i -> alpha**(i - 1 + c) mod p, order p - 1.

    alpha must be a primitive root mod p and c in [0, p-2]; nonzero c gives a
    circular row shift of the c = 0 array.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 0 <= c <= p - 2:
        raise ValueError(f"shift c = {c} out of range [0, {p - 2}]")
    ctx = ExtFieldContext(p)
    if not is_primitive(ctx.from_int(alpha % p)):
        raise ValueError(f"{alpha} is not a primitive root mod {p}")
    return [pow(alpha, i - 1 + c, p) for i in range(1, p)]


def golomb(ctx: ExtFieldContext, alpha: FieldElem, beta: FieldElem) -> list[int]:
    """Order q-2 permutation f with beta**f(i) = 1 - alpha**i, i in [1, q-2]."""
    q = ctx.q
    if q < 4:
        raise ValueError("Golomb construction needs q >= 4")
    if not is_primitive(alpha):
        raise ValueError("alpha is not primitive")
    if not is_primitive(beta):
        raise ValueError("beta is not primitive")
    table = dlog_table(ctx, beta)
    one = ctx.one()
    values = []
    acc = one
    for _ in range(1, q - 1):
        acc = acc * alpha
        values.append(table[one - acc])
    return values


def golomb_pm(p: int, m: int, alpha_enc=None, beta_enc=None):
    """Convenience wrapper: build GF(p^m) and default alpha/beta to the
    smallest primitive elements.  Returns (ctx, alpha, beta, permutation)."""
    ctx = ExtFieldContext(p, m)
    if alpha_enc is None or beta_enc is None:
        smallest = next(
            e for e in ctx.elements() if not e.is_zero() and is_primitive(e)
        )
        alpha = smallest if alpha_enc is None else ctx.from_int(alpha_enc)
        beta = smallest if beta_enc is None else ctx.from_int(beta_enc)
    else:
        alpha = ctx.from_int(alpha_enc)
        beta = ctx.from_int(beta_enc)
    return ctx, alpha, beta, golomb(ctx, alpha, beta)


def enumerate_costas(n: int, cap: int = ENUMERATION_CAP) -> list[list[int]]:
    """All Costas permutations of order n, lexicographic by value sequence.

    Backtracking with incremental per-lag difference sets: placing value v at
    position k adds the difference v - f(k - t) for every lag t, and a branch
    dies as soon as any lag repeats a difference.
    """
    if n > cap:
        raise ValueError(f"enumeration capped at n <= {cap}")
    if n < 1:
        raise ValueError("order must be >= 1")
    results = []
    prefix = []
    used = [False] * (n + 1)
    lag_sets = [set() for _ in range(n)]  # lag_sets[t] for t >= 1

    def extend():
        k = len(prefix)
        if k == n:
            results.append(prefix.copy())
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            added = []
            ok = True
            for t in range(1, k + 1):
                diff = v - prefix[k - t]
                if diff in lag_sets[t]:
                    ok = False
                    break
                lag_sets[t].add(diff)
                added.append((t, diff))
            if ok:
                used[v] = True
                prefix.append(v)
                extend()
                prefix.pop()
                used[v] = False
            for t, diff in added:
                lag_sets[t].discard(diff)

    extend()
    return results
