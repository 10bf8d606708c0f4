"""The explicit nowhere-continuous Costas bijection built from the
indicator of the rationals: f(x) = x**n * (1 + a*[x rational]), 1 + a = c**n.

For n = 2 the construction satisfies the Costas property over positive
rational displacements; the machinery here verifies that exactly (forced_y
is the contradiction engine for the mixed rational/irrational case) and,
for n = 3, produces exact quadratic-surd counterexamples showing the
restriction to n = 2 is sharp.

Irrationals are represented as quadratic surds only; that is all the n = 3
counterexample needs, and it keeps every check exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import QuadExt, RealValue, solve_quadratic

__all__ = [
    "IndicatorParams",
    "eval_f",
    "forced_y",
    "witness_n3",
    "costas_scan",
    "ScanReport",
    "reals_equal",
]

SCAN_RADICANDS = (2, 3, 5, 6, 7, 10)


@dataclass(frozen=True)
class IndicatorParams:
    n: int
    c: Fraction

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("exponent n must be 2 or 3")
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0 or self.c == 1:
            raise ValueError("c must be a positive rational != 1")

    @property
    def a(self) -> Fraction:
        return self.c**self.n - 1


def _sign(x: RealValue) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def reals_equal(u: RealValue, v: RealValue) -> bool:
    """Exact equality across representations (Fraction / QuadExt, any radicands)."""
    if isinstance(u, QuadExt):
        return u == v
    if isinstance(v, QuadExt):
        return v == u
    return u == v


def eval_f(x: RealValue, params: IndicatorParams) -> RealValue:
    """x**n scaled by c**n exactly when x is rational; exact in either field."""
    if _sign(x) < 0:
        raise ValueError("domain is the non-negative reals")
    if isinstance(x, QuadExt) and not x.is_rational:
        return x**params.n
    x = x.as_rational() if isinstance(x, QuadExt) else Fraction(x)
    return x**params.n * params.c**params.n


def forced_y(x: Fraction, z: Fraction, c: Fraction) -> Fraction:
    """The unique y with (y+z)**2 - y**2 = c**2 * [(x+z)**2 - x**2].

    Always rational: this is what turns the mixed rational/irrational case
    of the n = 2 Costas argument into a contradiction.
    """
    x, z, c = Fraction(x), Fraction(z), Fraction(c)
    if z == 0:
        raise ValueError("displacement z must be nonzero")
    return (c**2 * (2 * x * z + z * z) - z * z) / (2 * z)


def witness_n3(x: Fraction, z: Fraction, params: IndicatorParams):
    """Exact Costas violation for n = 3, if one exists at this (x, z).

    Solves 3*z*y**2 + 3*z**2*y + z**3 = c**3 * [(x+z)**3 - x**3] for y.  When
    the positive root is an irrational surd, (x, y, z) is a genuine violation:
    both exact differences agree while x != y.  Returns (y, certificate) or
    None (rational or non-positive root).
    """
    if params.n != 3:
        raise ValueError("witness generation applies to n = 3")
    x, z = Fraction(x), Fraction(z)
    if x <= 0 or z <= 0:
        raise ValueError("need x > 0 and z > 0")
    rhs = params.c**3 * ((x + z) ** 3 - x**3)
    roots = solve_quadratic(3 * z, 3 * z * z, z**3 - rhs)
    if roots is None:
        return None
    y = roots[0]  # the + branch; the - branch is smaller
    if isinstance(y, Fraction) or y.is_rational:
        return None
    if y.sign() <= 0:
        return None
    lhs = (y + z) ** 3 - y**3  # exact in Q(sqrt(d)); the surd part cancels
    assert reals_equal(lhs, rhs)
    certificate = {
        "x": x,
        "z": z,
        "y": y,
        "difference_rational_side": rhs,
        "difference_irrational_side": lhs,
    }
    return y, certificate


@dataclass
class ScanReport:
    params: IndicatorParams
    trials: int
    seed: int
    bound: int
    violations: list = field(default_factory=list)
    branch_histogram: dict = field(default_factory=dict)

    @property
    def violation_count(self) -> int:
        return len(self.violations)


def _random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def _random_real(rng: random.Random, bound: int) -> RealValue:
    q = _random_rational(rng, bound)
    if rng.random() < 0.5:
        return q
    return QuadExt(rng.choice(SCAN_RADICANDS), 0, q)


def _branch(x: RealValue, y: RealValue) -> str:
    xr = not (isinstance(x, QuadExt) and not x.is_rational)
    yr = not (isinstance(y, QuadExt) and not y.is_rational)
    if xr and yr:
        return "both_rational"
    if xr != yr:
        return "mixed"
    return "both_irrational_same_d" if x.d == y.d else "both_irrational_diff_d"


def costas_scan(
    params: IndicatorParams,
    trials: int,
    seed: int,
    bound: int = 50,
) -> ScanReport:
    """Randomized exact check of f(x+z) - f(x) = f(y+z) - f(y) => x = y.

    x and y range over positive rationals and pure surds q*sqrt(d) with small
    d; z over positive rationals.  Every comparison is exact; the report
    counts which branch of the case split each trial hit.
    """
    if params.n != 2:
        raise ValueError("the scan checks the n = 2 Costas claim")
    rng = random.Random(seed)
    report = ScanReport(params=params, trials=trials, seed=seed, bound=bound)
    hist = report.branch_histogram
    for _ in range(trials):
        x = _random_real(rng, bound)
        y = _random_real(rng, bound)
        z = _random_rational(rng, bound)
        if reals_equal(x, y):
            hist["x_eq_y"] = hist.get("x_eq_y", 0) + 1
            continue
        branch = _branch(x, y)
        hist[branch] = hist.get(branch, 0) + 1
        lhs = eval_f(x + z, params) - eval_f(x, params)
        rhs = eval_f(y + z, params) - eval_f(y, params)
        if reals_equal(lhs, rhs):
            report.violations.append((x, y, z))
    return report
