"""End-to-end acceptance gate.

Each test exercises one headline guarantee of the package against an
independent oracle or an exact invariant, enforces its runtime budget, and
prints a single PASS/FAIL line (straight to the real stdout so the summary
is visible under pytest's capture).
"""

import itertools
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from costaslab import cauchy, cloud, costas, indicator, rulers
from costaslab.exact_arith import QuadExt
from costaslab.finite_field import ExtFieldContext, primitive_elements

PRIMES_47 = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
BC_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


_capsys = None


@pytest.fixture(autouse=True)
def _summary_channel(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(label, ok, started, budget=None):
    elapsed = time.perf_counter() - started
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] {label} ({elapsed:.1f}s)"
    with _capsys.disabled():
        print(line, flush=True)
    assert ok, line
    if budget is not None:
        assert elapsed < budget, f"{label}: {elapsed:.1f}s exceeds {budget}s budget"


def test_01_enumeration_matches_brute_force():
    t0 = time.perf_counter()
    counts = {}
    ok = True
    for n in range(2, 8):
        expected = []
        for perm in itertools.permutations(range(1, n + 1)):
            good = True
            for t in range(1, n):
                diffs = [perm[i + t] - perm[i] for i in range(n - t)]
                if len(set(diffs)) != len(diffs):
                    good = False
                    break
            if good:
                expected.append(list(perm))
        got = costas.enumerate_costas(n)
        counts[n] = len(expected)
        ok = ok and got == expected
    report(f"costas enumeration n=2..7 equals brute force, counts {counts}", ok, t0, budget=60)


def test_02_welch_soundness():
    t0 = time.perf_counter()
    checked = failures = 0
    for p in PRIMES_47:
        ctx = ExtFieldContext(p)
        for alpha in (a.to_int() for a in primitive_elements(ctx)):
            for c in range(p - 1):
                checked += 1
                if not costas.verify_costas(costas.welch(p, alpha, c)).ok:
                    failures += 1
    report(
        f"welch permutations pass the difference-triangle verifier "
        f"({checked} cases, {failures} failures)",
        failures == 0 and checked > 0,
        t0,
        budget=30,
    )


def test_03_golomb_soundness():
    t0 = time.perf_counter()
    fields = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3)]
    checked = failures = 0
    for p, m in fields:
        ctx = ExtFieldContext(p, m)
        prims = primitive_elements(ctx)
        for alpha in prims:
            for beta in prims:
                checked += 1
                perm = costas.golomb(ctx, alpha, beta)
                if sorted(perm) != list(range(1, ctx.q - 1)) or not costas.verify_costas(perm).ok:
                    failures += 1
    report(
        f"golomb permutations over q in {{4..27}} are Costas bijections "
        f"({checked} cases, {failures} failures)",
        failures == 0 and checked > 0,
        t0,
        budget=60,
    )


def test_04_ruler_constructions():
    t0 = time.perf_counter()
    ok = True
    for p in [2, 3] + PRIMES_47:
        marks = rulers.erdos_turan(p)
        ok = ok and verifies(marks) and max(marks) - min(marks) <= 2 * p * p + p
    for p in [3] + PRIMES_47:
        for g in range(1, p):
            if len({pow(g, k, p) for k in range(p - 1)}) != p - 1:
                continue
            for s in range(1, p):
                if math.gcd(s, p - 1) != 1:
                    continue
                marks = rulers.ruzsa_lindstrom(p, g, s)
                ok = ok and verifies(marks) and max(marks) - min(marks) < p * (p - 1)
    for p, m in BC_FIELDS:
        q = p**m
        marks = rulers.bose_chowla(p, m)
        ok = ok and verifies(marks) and max(marks) - min(marks) < q * q - 1
    for n in range(1, 51):
        for a in (1, 2):
            marks = rulers.quadratic_ruler(n, a)
            ok = ok and verifies(marks) and max(marks) == a * n * (n - 1) ** 2 + (n - 1)
    report("all four ruler constructions are Sidon within their length bounds", ok, t0, budget=30)


def verifies(marks):
    return rulers.verify_sidon(marks)[0] and rulers.verify_sidon_sums(marks)[0]


def test_05_bose_chowla_difference_structure():
    t0 = time.perf_counter()
    ok = all(rulers.bose_chowla_difference_check(p, m) for p, m in BC_FIELDS)
    report(
        "bose-chowla differences are exactly the residues not divisible by q+1",
        ok,
        t0,
    )


def test_06_indicator_scan_and_forced_y():
    t0 = time.perf_counter()
    violations = 0
    for c, seed in ((Fraction(2), 101), (Fraction(3, 2), 102), (Fraction(5), 103)):
        rep = indicator.costas_scan(indicator.IndicatorParams(2, c), trials=10**5, seed=seed)
        violations += rep.violation_count
    rng = random.Random(20240823)
    identity_ok = True
    for _ in range(10**3):
        x = Fraction(rng.randint(0, 99), rng.randint(1, 99))
        z = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        c = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        if c == 1:
            c += 1
        y = indicator.forced_y(x, z, c)
        identity_ok = identity_ok and (y + z) ** 2 - y**2 == c**2 * ((x + z) ** 2 - x**2)
    report(
        f"squared-map scan: 3x10^5 exact trials, {violations} violations; "
        f"forced-y identity exact on 10^3 cases",
        violations == 0 and identity_ok,
        t0,
    )


def test_07_cubed_map_violations():
    t0 = time.perf_counter()
    params = indicator.IndicatorParams(3, 2)
    witnesses = set()
    for x in range(1, 200):
        for z in (1, 2):
            got = indicator.witness_n3(Fraction(x), Fraction(z), params)
            if got is None:
                continue
            y, cert = got
            assert isinstance(y, QuadExt) and not y.is_rational and y.sign() > 0
            lhs = indicator.eval_f(y + cert["z"], params) - indicator.eval_f(y, params)
            rhs = indicator.eval_f(cert["x"] + cert["z"], params) - indicator.eval_f(
                cert["x"], params
            )
            assert indicator.reals_equal(lhs, rhs)
            assert not indicator.reals_equal(cert["x"], y)
            witnesses.add(y)
        if len(witnesses) >= 100:
            break
    report(
        f"cubed map: {len(witnesses)} distinct exactly-verified Costas violations",
        len(witnesses) >= 100,
        t0,
    )


def test_08_cloud_build():
    t0 = time.perf_counter()
    state = cloud.build_cloud(4)
    ok = len(state.points) == 340
    ok = ok and cloud.verify_cloud(state.points).ok
    for matrix in cloud.cell_occupancy(state).values():
        ok = ok and all(all(row) for row in matrix)
    xs = [p.x for p in state.points]
    ys = [p.y for p in state.points]
    ok = ok and len(set(xs)) == 340 and len(set(ys)) == 340
    ok = ok and cloud.build_cloud(4).coordinates() == state.coordinates()
    report(
        "4-stage cloud: 340 points, distinct difference vectors, full cell "
        "occupancy, injective coordinates, deterministic rebuild",
        ok,
        t0,
        budget=120,
    )


def test_09_greedy_dense_ruler():
    t0 = time.perf_counter()
    marks, log = rulers.greedy_dense(
        (Fraction(0), Fraction(1)), count=300, dense=True
    )
    ok = len(marks) == 300 and rulers.verify_sidon(marks)[0]
    schedule = rulers.dense_schedule(Fraction(0), Fraction(1))
    for mark, (lo, hi) in zip(marks, schedule):
        ok = ok and lo <= mark < hi

    got, _ = rulers.greedy_dense(None, count=10, integers=True)
    oracle = []
    n = 0
    while len(oracle) < 10:
        n += 1
        trial = oracle + [n]
        sums = [a + b for i, a in enumerate(trial) for b in trial[i:]]
        if len(set(sums)) == len(sums):
            oracle.append(n)
    ok = ok and got == [Fraction(v) for v in oracle]
    report(
        "greedy ruler: 300 marks exactly Sidon with every mark inside its "
        "density-schedule interval; integer mode matches quadratic-time oracle",
        ok,
        t0,
    )


def test_10_additive_sandbox():
    t0 = time.perf_counter()
    box = cauchy.Sandbox({0: 2, 1: 3, 2: 5})
    qmap = cauchy.QLinearMap(
        box, {0: 1, 1: 2, 2: 0}, {0: Fraction(2), 1: Fraction(-1, 3), 2: Fraction(5, 7)}
    )
    rng = random.Random(77)

    def rand_vec():
        return cauchy.HamelVector(
            {i: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for i in (0, 1, 2)}
        )

    structural_ok = True
    for _ in range(10**3):
        v1, v2 = rand_vec(), rand_vec()
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        structural_ok = structural_ok and cauchy.additivity_check(qmap, v1, v2)
        structural_ok = structural_ok and qmap.apply(v1.scale(q)) == qmap.apply(v1).scale(q)

    # exp(f(x+z)) - exp(f(x)) - [exp(f(y+z)) - exp(f(y))]
    # factorizes as (exp(f(z)) - 1) * (exp(f(x)) - exp(f(y))).  Coefficients
    # stay small so the exponentials are O(10^6) and 128 bits leave the
    # absolute residual far below the 10^-30 bar.
    def small_vec():
        return cauchy.HamelVector(
            {i: Fraction(rng.randint(-2, 2), rng.randint(3, 6)) for i in (0, 1, 2)}
        )

    worst = mpmath.mpf(0)
    with mpmath.workprec(192):
        for _ in range(10**3):
            x, y, z = small_vec(), small_vec(), small_vec()
            gx = cauchy.welch_g(qmap, x, 128)
            gy = cauchy.welch_g(qmap, y, 128)
            gxz = cauchy.welch_g(qmap, x + z, 128)
            gyz = cauchy.welch_g(qmap, y + z, 128)
            ez = mpmath.exp(cauchy.embed(box, qmap.apply(z), 128))
            residual = abs((gxz - gx) - (gyz - gy) - (ez - 1) * (gx - gy))
            worst = max(worst, residual)
    factor_ok = worst < mpmath.mpf(10) ** -30

    probe_hits = 0
    for _ in range(100):
        target = (
            Fraction(rng.randint(-1000, 1000), 100),
            Fraction(rng.randint(-1000, 1000), 100),
        )
        got = cauchy.density_probe(
            qmap, box.basis_vector(0), box.basis_vector(1), target, Fraction(1, 100)
        )
        probe_hits += got is not None

    domain_ok = True
    for _ in range(200):
        v = cauchy.HamelVector(
            {i: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for i in (0, 1, 2)}
        )
        nonneg = cauchy.embedding_sign(box, qmap.apply(v)) >= 0
        try:
            cauchy.golomb_g(qmap, v)
            raised = False
        except cauchy.DomainError:
            raised = True
        domain_ok = domain_ok and raised == nonneg

    report(
        f"additive sandbox: structural identities exact on 10^3 cases, worst "
        f"factorization residual {mpmath.nstr(worst, 3)}, density probe "
        f"{probe_hits}/100, domain guard exact",
        structural_ok and factor_ok and probe_hits == 100 and domain_ok,
        t0,
    )
