"""Finite-basis exact model of nonlinear additive (Cauchy-equation) maps,
plus the continuum transforms built on top of them.

The uncountable Hamel basis is replaced by at most 16 symbols embedding as
square roots of pairwise distinct squarefree integers -- provably linearly
independent over Q, so every algebraic identity in the proofs is exercised
exactly.  Costas decisions are made on exact coordinates; high-precision
numerics (mpmath) are corroboration and plotting windows only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact_arith import format_rational, parse_rational, squarefree_decompose

__all__ = [
    "DomainError",
    "Sandbox",
    "HamelVector",
    "QLinearMap",
    "additivity_check",
    "embed",
    "embedding_sign",
    "welch_g",
    "golomb_g",
    "strip_h",
    "moebius_h",
    "costas_decide",
    "density_probe",
    "load_sandbox",
    "dump_sandbox",
]

MAX_SYMBOLS = 16


class DomainError(ValueError):
    """The requested transform is not real-valued at this input."""


class Sandbox:
    """A finite set of basis symbols id -> squarefree radicand r (sqrt(r)
    embeds the symbol into R; r = 1 embeds as 1)."""

    def __init__(self, radicands):
        items = dict(radicands)
        if not items:
            raise ValueError("sandbox needs at least one symbol")
        if len(items) > MAX_SYMBOLS:
            raise ValueError(f"sandbox capped at {MAX_SYMBOLS} symbols")
        values = list(items.values())
        if len(set(values)) != len(values):
            raise ValueError("radicands must be pairwise distinct")
        for r in values:
            if r < 1 or squarefree_decompose(r)[0] != 1:
                raise ValueError(f"radicand {r} is not a squarefree positive integer")
        self.radicands = items

    @property
    def ids(self):
        return sorted(self.radicands)

    def check_symbol(self, i):
        if i not in self.radicands:
            raise KeyError(f"unknown symbol id {i}")

    def basis_vector(self, i) -> "HamelVector":
        self.check_symbol(i)
        return HamelVector({i: Fraction(1)})


class HamelVector:
    """Finite sparse rational coordinate vector over the sandbox symbols."""

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        clean = {}
        for i, q in (coords or {}).items():
            q = Fraction(q)
            if q != 0:
                clean[int(i)] = q
        self.coords = clean

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other):
        out = dict(self.coords)
        for i, q in other.coords.items():
            out[i] = out.get(i, Fraction(0)) + q
        return HamelVector(out)

    def __sub__(self, other):
        out = dict(self.coords)
        for i, q in other.coords.items():
            out[i] = out.get(i, Fraction(0)) - q
        return HamelVector(out)

    def __neg__(self):
        return HamelVector({i: -q for i, q in self.coords.items()})

    def scale(self, q) -> "HamelVector":
        q = Fraction(q)
        return HamelVector({i: c * q for i, c in self.coords.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, HamelVector) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self):
        if not self.coords:
            return "HamelVector(0)"
        terms = " + ".join(f"{q}*b{i}" for i, q in sorted(self.coords.items()))
        return f"HamelVector({terms})"


class QLinearMap:
    """Exact additive bijection: permutes the basis symbols and rescales each
    coordinate by a nonzero rational.  Additivity and rational homogeneity
    hold by construction; nonlinearity (hence nowhere-continuity in the full
    theory) is exactly the non-scalar case."""

    def __init__(self, sandbox: Sandbox, perm: dict, scale: dict):
        ids = set(sandbox.ids)
        perm = {int(k): int(v) for k, v in perm.items()}
        if set(perm) != ids or set(perm.values()) != ids:
            raise ValueError("perm must be a bijection on the sandbox symbols")
        scale = {int(k): Fraction(v) for k, v in scale.items()}
        if set(scale) != ids:
            raise ValueError("scale must cover every symbol")
        if any(v == 0 for v in scale.values()):
            raise ValueError("scales must be nonzero")
        self.sandbox = sandbox
        self.perm = perm
        self.scales = scale

    def apply(self, v: HamelVector) -> HamelVector:
        out = {}
        for i, q in v.coords.items():
            self.sandbox.check_symbol(i)
            out[self.perm[i]] = q * self.scales[i]
        return HamelVector(out)

    def inverse(self) -> "QLinearMap":
        inv_perm = {v: k for k, v in self.perm.items()}
        inv_scale = {self.perm[i]: 1 / s for i, s in self.scales.items()}
        return QLinearMap(self.sandbox, inv_perm, inv_scale)

    def is_scalar(self) -> bool:
        """True iff the map is x -> c*x on the sandbox (the continuous case)."""
        if any(k != v for k, v in self.perm.items()):
            return False
        return len(set(self.scales.values())) == 1


def additivity_check(qmap: QLinearMap, v1: HamelVector, v2: HamelVector) -> bool:
    """f(v1 + v2) == f(v1) + f(v2), exact coordinates (structural regression)."""
    return qmap.apply(v1 + v2) == qmap.apply(v1) + qmap.apply(v2)


def _mpf_fraction(q: Fraction):
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def embed(sandbox: Sandbox, v: HamelVector, precision_bits: int = 128):
    """Sum of q_i * sqrt(r_i) as an mpf carrying `precision_bits` of precision."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    with mpmath.workprec(precision_bits + 16):
        total = mpmath.mpf(0)
        for i, q in v.coords.items():
            sandbox.check_symbol(i)
            total += _mpf_fraction(q) * mpmath.sqrt(sandbox.radicands[i])
        result = +total
    return result


def embedding_sign(sandbox: Sandbox, v: HamelVector, precision_bits: int = 128) -> int:
    """Exact sign of the embedded value.

    Zero iff the vector is zero (the radicals are Q-independent); otherwise
    the numeric value is bounded away from zero and precision escalation
    settles the sign.
    """
    if v.is_zero():
        return 0
    prec = max(precision_bits, 128)
    while prec <= 1 << 16:
        with mpmath.workprec(prec):
            val = embed(sandbox, v, prec)
            if abs(val) > mpmath.mpf(2) ** (64 - prec):
                return 1 if val > 0 else -1
        prec *= 2
    raise ArithmeticError(f"sign of {v!r} unresolved at 65536 bits")


def welch_g(qmap: QLinearMap, v: HamelVector, precision_bits: int = 128):
    """exp(f(v)): the additive structure turned multiplicative."""
    with mpmath.workprec(precision_bits + 16):
        result = +mpmath.exp(embed(qmap.sandbox, qmap.apply(v), precision_bits + 16))
    return result


def golomb_g(qmap: QLinearMap, v: HamelVector, precision_bits: int = 128):
    """ln(1 - exp(f(v))), defined only where f(v) < 0 strictly."""
    image = qmap.apply(v)
    if embedding_sign(qmap.sandbox, image, precision_bits) >= 0:
        raise DomainError("ln(1 - exp(f(v))) requires f(v) < 0")
    with mpmath.workprec(precision_bits + 16):
        fx = embed(qmap.sandbox, image, precision_bits + 16)
        result = +mpmath.log(1 - mpmath.exp(fx))
    return result


def strip_h(qmap: QLinearMap, v: HamelVector, precision_bits: int = 128):
    """exp(-g(v)) in (0, 1)."""
    with mpmath.workprec(precision_bits + 16):
        result = +mpmath.exp(-welch_g(qmap, v, precision_bits + 16))
    return result


def moebius_h(qmap: QLinearMap, v: HamelVector, precision_bits: int = 128):
    """g(v) / (1 + g(v)) in (0, 1)."""
    with mpmath.workprec(precision_bits + 16):
        g = welch_g(qmap, v, precision_bits + 16)
        result = +(g / (1 + g))
    return result


def costas_decide(
    qmap: QLinearMap, x: HamelVector, y: HamelVector, z: HamelVector
) -> bool:
    """Exact decision: can g(x+z) - g(x) = g(y+z) - g(y) hold?

    The difference factorizes through (exp(f(z)) - 1)(exp(f(x)) - exp(f(y))),
    so equality holds iff z = 0 or f(x) = f(y); this exact coordinate test
    replaces any numeric comparison."""
    return z.is_zero() or qmap.apply(x) == qmap.apply(y)


def density_probe(
    qmap: QLinearMap,
    v1: HamelVector,
    v2: HamelVector,
    target,
    eps,
    coeff_bound: int = 10**6,
    precision_bits: int = 128,
):
    """Rational coefficients (r1, r2) putting the graph point of
    w = r1*v1 + r2*v2 within eps (max-norm) of `target`.

    Solves the 2x2 real system exactly enough at high precision, then
    rationalizes via continued-fraction convergents with denominators capped
    at coeff_bound.  Returns (r1, r2) or None when the cap is too small for
    eps.  Raises ValueError when the two graph points are dependent.
    """
    sandbox = qmap.sandbox
    with mpmath.workprec(precision_bits + 16):
        e1 = embed(sandbox, v1, precision_bits)
        f1 = embed(sandbox, qmap.apply(v1), precision_bits)
        e2 = embed(sandbox, v2, precision_bits)
        f2 = embed(sandbox, qmap.apply(v2), precision_bits)
        det = e1 * f2 - e2 * f1
        if abs(det) < mpmath.mpf(2) ** (32 - precision_bits):
            raise ValueError("graph points of v1 and v2 are linearly dependent")
        tx = mpmath.mpf(str(target[0]))
        ty = mpmath.mpf(str(target[1]))
        r1_real = (tx * f2 - ty * e2) / det
        r2_real = (e1 * ty - f1 * tx) / det
    r1 = _rationalize(r1_real, coeff_bound)
    r2 = _rationalize(r2_real, coeff_bound)
    w = r1 * v1 + r2 * v2
    ex = embed(sandbox, w, precision_bits)
    ey = embed(sandbox, qmap.apply(w), precision_bits)
    eps_mp = mpmath.mpf(str(eps))
    if max(abs(ex - tx), abs(ey - ty)) < eps_mp:
        return r1, r2
    return None


def _rationalize(x, denominator_cap: int) -> Fraction:
    x = mpmath.mpf(x)
    exact = Fraction(int(x.man)) * Fraction(2) ** int(x.exp)
    if x < 0:
        exact = -exact
    return exact.limit_denominator(denominator_cap)


# -- sandbox description files --------------------------------------------


def dump_sandbox(qmap: QLinearMap) -> dict:
    ids = qmap.sandbox.ids
    return {
        "symbols": [{"id": i, "radicand": qmap.sandbox.radicands[i]} for i in ids],
        "perm": [qmap.perm[i] for i in ids],
        "scale": [format_rational(qmap.scales[i]) for i in ids],
    }


def load_sandbox(source) -> QLinearMap:
    """Build a map from a sandbox description (dict, JSON text, or path)."""
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError:
            with open(source) as fh:
                obj = json.load(fh)
    else:
        obj = source
    sandbox = Sandbox({s["id"]: s["radicand"] for s in obj["symbols"]})
    ids = sandbox.ids
    perm = {i: p for i, p in zip(ids, obj["perm"])}
    scale = {i: parse_rational(s) for i, s in zip(ids, obj["scale"])}
    return QLinearMap(sandbox, perm, scale)
