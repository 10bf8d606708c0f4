"""Command-line entry point.

Every construction and verifier in the library is reachable from here, with
reproducible seeds and machine-readable output.  JSON (the default) wraps
each payload in a fixed envelope so identical command + seed gives
byte-identical output; CSV is provided for plotting pipelines.  Rationals
are always serialized as "num/den".

Exit codes: 0 success, 1 verification failed, 2 invalid parameters,
3 internal candidate cap exceeded.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from fractions import Fraction

import click
import mpmath

from . import __version__, cauchy, cloud, costas, indicator, plotting, rulers
from .exact_arith import QuadExt, format_rational, parse_rational

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_CAP_EXCEEDED = 3

_FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
    show_default=True, help="output format",
)
_THREADS = click.option(
    "--threads", type=int, default=1, show_default=True,
    help="worker count; results are independent of it",
)


def _command_line() -> str:
    return " ".join(sys.argv[1:])


def _emit(payload, fmt="json", seed=None, code=EXIT_OK, csv_text=None):
    if fmt == "csv" and csv_text is not None:
        click.echo(csv_text)
    else:
        envelope = {
            "version": __version__,
            "command": _command_line(),
            "seed": seed,
            "payload": payload,
            "exit_code": code,
        }
        click.echo(json.dumps(envelope, sort_keys=True))
    sys.exit(code)


def _fail(message, code=EXIT_BAD_PARAMS):
    _emit({"error": str(message)}, code=code)


def _guarded(fn):
    """Map library errors onto the CLI exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (rulers.CandidateCapExceeded, cloud.CandidateCapExceeded) as exc:
            _fail(exc, code=EXIT_CAP_EXCEEDED)
        except (ValueError, ZeroDivisionError, KeyError, OSError) as exc:
            _fail(exc)

    return wrapper


def _parse_int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_rational_list(text):
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def _parse_endpoint(text):
    text = text.strip()
    if text in ("inf", "+inf", "-inf"):
        return None
    return parse_rational(text)


@click.group()
@click.version_option(version=__version__)
def main():
    """Exact Costas permutations, Golomb rulers, and rational Costas clouds."""


# -- costas ---------------------------------------------------------------


@main.group("costas")
def costas_group():
    """Costas permutations: constructions, verifier, enumeration."""


@costas_group.command("welch")
@click.option("--p", type=int, required=True)
@click.option("--alpha", type=int, required=True)
@click.option("--c", type=int, default=0, show_default=True)
@_FORMAT
@_guarded
def costas_welch(p, alpha, c, fmt):
    values = costas.welch(p, alpha, c)
    _emit(
        {"n": len(values), "values": values},
        fmt=fmt,
        csv_text=",".join(map(str, values)),
    )


@costas_group.command("golomb")
@click.option("--p", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--alpha", type=int, default=None, help="integer encoding; default: smallest primitive element")
@click.option("--beta", type=int, default=None, help="integer encoding; default: smallest primitive element")
@_FORMAT
@_guarded
def costas_golomb(p, m, alpha, beta, fmt):
    ctx, a, b, values = costas.golomb_pm(p, m, alpha, beta)
    _emit(
        {
            "n": len(values),
            "values": values,
            "field": {"p": ctx.p, "m": ctx.m, "modulus": list(ctx.modulus)},
            "alpha": a.to_int(),
            "beta": b.to_int(),
        },
        fmt=fmt,
        csv_text=",".join(map(str, values)),
    )


@costas_group.command("verify")
@click.option("--perm", required=True, help="comma-separated values, e.g. 1,2,4,3")
@_THREADS
@_FORMAT
@_guarded
def costas_verify(perm, threads, fmt):
    report = costas.verify_costas(_parse_int_list(perm))
    payload = {"ok": report.ok, "violations": [list(v) for v in report.violations]}
    code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    _emit(payload, fmt=fmt, code=code, csv_text="ok" if report.ok else "violations")


@costas_group.command("enumerate")
@click.option("--n", type=int, required=True)
@click.option("--count-only", is_flag=True)
@_THREADS
@_FORMAT
@_guarded
def costas_enumerate(n, count_only, threads, fmt):
    perms = costas.enumerate_costas(n)
    if count_only:
        _emit({"n": n, "count": len(perms)}, fmt=fmt, csv_text=str(len(perms)))
    _emit(
        {"n": n, "count": len(perms), "permutations": perms},
        fmt=fmt,
        csv_text="\n".join(",".join(map(str, p)) for p in perms),
    )


# -- ruler ----------------------------------------------------------------


@main.group("ruler")
def ruler_group():
    """Golomb rulers / Sidon sets: constructions, verifier, greedy builder."""


def _emit_int_ruler(marks, fmt, plot):
    if plot:
        plotting.save_ruler_figure(marks, plot)
    _emit(
        {"marks": marks, "optimality": rulers.optimality_report(marks)},
        fmt=fmt,
        csv_text=",".join(map(str, marks)),
    )


@ruler_group.command("et")
@click.option("--p", type=int, required=True)
@click.option("--plot", type=click.Path(), default=None, help="render ruler figure")
@_FORMAT
@_guarded
def ruler_et(p, plot, fmt):
    _emit_int_ruler(rulers.erdos_turan(p), fmt, plot)


@ruler_group.command("rl")
@click.option("--p", type=int, required=True)
@click.option("--g", type=int, required=True)
@click.option("--s", type=int, default=1, show_default=True)
@click.option("--plot", type=click.Path(), default=None)
@_FORMAT
@_guarded
def ruler_rl(p, g, s, plot, fmt):
    _emit_int_ruler(rulers.ruzsa_lindstrom(p, g, s), fmt, plot)


@ruler_group.command("bc")
@click.option("--p", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--check-differences", is_flag=True, help="also verify the difference-set characterization")
@click.option("--plot", type=click.Path(), default=None)
@_FORMAT
@_guarded
def ruler_bc(p, m, check_differences, plot, fmt):
    marks = rulers.bose_chowla(p, m)
    if plot:
        plotting.save_ruler_figure(marks, plot)
    payload = {"marks": marks, "optimality": rulers.optimality_report(marks)}
    if check_differences:
        payload["difference_set_ok"] = rulers.bose_chowla_difference_check(p, m)
    _emit(payload, fmt=fmt, csv_text=",".join(map(str, marks)))


@ruler_group.command("quad")
@click.option("--n", type=int, required=True)
@click.option("--a", type=int, default=1, show_default=True)
@click.option("--plot", type=click.Path(), default=None)
@_FORMAT
@_guarded
def ruler_quad(n, a, plot, fmt):
    _emit_int_ruler(rulers.quadratic_ruler(n, a), fmt, plot)


@ruler_group.command("verify")
@click.option("--marks", required=True, help='comma-separated marks; rationals as "num/den"')
@_THREADS
@_FORMAT
@_guarded
def ruler_verify(marks, threads, fmt):
    ok, quad = rulers.verify_sidon(_parse_rational_list(marks))
    payload = {"ok": ok}
    if quad is not None:
        payload["conflict"] = [format_rational(v) for v in quad]
    _emit(
        payload,
        fmt=fmt,
        code=EXIT_OK if ok else EXIT_VERIFY_FAILED,
        csv_text="ok" if ok else "conflict",
    )


def _greedy_log_csv(log):
    lines = ["candidate,accepted,conflict,interval"]
    for entry in log:
        conflict = (
            ";".join(format_rational(v) for v in entry.conflict)
            if entry.conflict
            else ""
        )
        interval = (
            f"[{format_rational(entry.interval[0])},{format_rational(entry.interval[1])})"
            if entry.interval
            else ""
        )
        lines.append(
            f"{format_rational(entry.candidate)},{int(entry.accepted)},{conflict},{interval}"
        )
    return "\n".join(lines)


@ruler_group.command("greedy")
@click.option("--interval", default="0,1", show_default=True, help='LO,HI; "inf"/"-inf" for unbounded ends')
@click.option("--count", type=int, required=True)
@click.option("--dense", is_flag=True, help="constrain step m+1 to schedule interval I_{m+1}")
@click.option("--integers", is_flag=True, help="greedy over 1,2,3,... instead of rationals")
@click.option("--log", "log_path", type=click.Path(), default=None, help="write the acceptance log CSV here")
@click.option("--plot", type=click.Path(), default=None)
@_FORMAT
@_guarded
def ruler_greedy(interval, count, dense, integers, log_path, plot, fmt):
    lo_text, hi_text = interval.split(",")
    lo, hi = _parse_endpoint(lo_text), _parse_endpoint(hi_text)
    marks, log = rulers.greedy_dense(
        interval=(lo, hi), count=count, dense=dense, integers=integers
    )
    if log_path:
        with open(log_path, "w") as fh:
            fh.write(_greedy_log_csv(log) + "\n")
    if plot:
        plotting.save_ruler_figure(marks, plot)
    payload = {
        "marks": [format_rational(m) for m in marks],
        "interval": [
            "-inf" if lo is None else format_rational(lo),
            "inf" if hi is None else format_rational(hi),
        ],
    }
    _emit(payload, fmt=fmt, csv_text=",".join(format_rational(m) for m in marks))


# -- indicator ------------------------------------------------------------


@main.group("indicator")
def indicator_group():
    """The nowhere-continuous indicator-function Costas bijection."""


@indicator_group.command("scan")
@click.option("--c", required=True, help='rational, e.g. 2 or "3/2"')
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--bound", type=int, default=50, show_default=True)
@_THREADS
@_FORMAT
@_guarded
def indicator_scan(c, n, trials, seed, bound, threads, fmt):
    params = indicator.IndicatorParams(n=n, c=parse_rational(c))
    report = indicator.costas_scan(params, trials=trials, seed=seed, bound=bound)
    payload = {
        "params": {"n": params.n, "c": format_rational(params.c), "a": format_rational(params.a)},
        "trials": report.trials,
        "violations": report.violation_count,
        "branch_histogram": report.branch_histogram,
        "seed": seed,
    }
    code = EXIT_OK if report.violation_count == 0 else EXIT_VERIFY_FAILED
    _emit(payload, fmt=fmt, seed=seed, code=code)


def _real_json(value):
    if isinstance(value, QuadExt):
        return value.to_json()
    return format_rational(value)


@indicator_group.command("witness")
@click.option("--x", required=True)
@click.option("--z", required=True)
@click.option("--c", required=True)
@_FORMAT
@_guarded
def indicator_witness(x, z, c, fmt):
    params = indicator.IndicatorParams(n=3, c=parse_rational(c))
    result = indicator.witness_n3(parse_rational(x), parse_rational(z), params)
    if result is None:
        _emit({"witness": None}, fmt=fmt)
    y, cert = result
    _emit(
        {
            "witness": {
                "x": format_rational(cert["x"]),
                "z": format_rational(cert["z"]),
                "y": y.to_json(),
                "difference_rational_side": format_rational(
                    cert["difference_rational_side"]
                ),
                "difference_irrational_side": _real_json(
                    cert["difference_irrational_side"]
                ),
            }
        },
        fmt=fmt,
    )


# -- cauchy ---------------------------------------------------------------


@main.group("cauchy")
def cauchy_group():
    """Finite-basis Cauchy-equation sandbox and its continuum transforms."""


def _random_vector(qmap, rng, coeff_range=9):
    coords = {}
    for i in qmap.sandbox.ids:
        if rng.random() < 0.7:
            num = rng.randint(-coeff_range, coeff_range)
            if num:
                coords[i] = Fraction(num, rng.randint(1, coeff_range))
    return cauchy.HamelVector(coords)


@cauchy_group.command("check")
@click.option("--sandbox", "sandbox_path", type=click.Path(exists=True), required=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, required=True)
@_THREADS
@_FORMAT
@_guarded
def cauchy_check(sandbox_path, trials, seed, threads, fmt):
    qmap = cauchy.load_sandbox(sandbox_path)
    rng = random.Random(seed)
    inv = qmap.inverse()
    failures = 0
    for _ in range(trials):
        v1 = _random_vector(qmap, rng)
        v2 = _random_vector(qmap, rng)
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        ok = (
            cauchy.additivity_check(qmap, v1, v2)
            and qmap.apply(v1.scale(q)) == qmap.apply(v1).scale(q)
            and inv.apply(qmap.apply(v1)) == v1
        )
        failures += not ok
    payload = {
        "trials": trials,
        "failures": failures,
        "is_scalar": qmap.is_scalar(),
    }
    code = EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED
    _emit(payload, fmt=fmt, seed=seed, code=code)


_TRANSFORMS = {
    "none": None,
    "welch": cauchy.welch_g,
    "strip": cauchy.strip_h,
    "moebius": cauchy.moebius_h,
    "golomb": cauchy.golomb_g,
}


@cauchy_group.command("sample")
@click.option("--sandbox", "sandbox_path", type=click.Path(exists=True), required=True)
@click.option("--count", type=int, default=200, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--transform", type=click.Choice(sorted(_TRANSFORMS)), default="none", show_default=True)
@click.option("--precision", type=int, default=128, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None, help="write the sample CSV here (default stdout)")
@click.option("--plot", type=click.Path(), default=None)
@_guarded
def cauchy_sample(sandbox_path, count, seed, transform, precision, out_path, plot):
    """Sample graph points of the map (or a transform of it) as CSV:
    embedded decimals at fixed width plus the exact coordinate columns."""
    qmap = cauchy.load_sandbox(sandbox_path)
    rng = random.Random(seed)
    fn = _TRANSFORMS[transform]
    rows = ["x_embed,y_embed,x_exact,y_exact"]
    points = []
    produced = 0
    while produced < count:
        v = _random_vector(qmap, rng)
        image = qmap.apply(v)
        x = cauchy.embed(qmap.sandbox, v, precision)
        if fn is None:
            y = cauchy.embed(qmap.sandbox, image, precision)
        else:
            try:
                y = fn(qmap, v, precision)
            except cauchy.DomainError:
                continue
        xs = mpmath.nstr(x, 17, strip_zeros=False)
        ys = mpmath.nstr(y, 17, strip_zeros=False)
        x_exact = ";".join(
            f"{i}:{format_rational(q)}" for i, q in sorted(v.coords.items())
        )
        y_exact = ";".join(
            f"{i}:{format_rational(q)}" for i, q in sorted(image.coords.items())
        )
        rows.append(f"{xs},{ys},{x_exact},{y_exact}")
        points.append((float(x), float(y)))
        produced += 1
    text = "\n".join(rows) + "\n"
    if plot:
        plotting.save_cloud_figure(points, plot, title=f"{transform} sample")
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
        _emit({"written": out_path, "count": count}, seed=seed)
    click.echo(text, nl=False)
    sys.exit(EXIT_OK)


@cauchy_group.command("probe")
@click.option("--sandbox", "sandbox_path", type=click.Path(exists=True), required=True)
@click.option("--target", required=True, help="X,Y (decimals accepted; numeric target only)")
@click.option("--eps", default="0.01", show_default=True)
@click.option("--coeff-bound", type=int, default=10**6, show_default=True)
@click.option("--v1", "v1_id", type=int, default=None, help="symbol id of the first basis vector")
@click.option("--v2", "v2_id", type=int, default=None)
@click.option("--precision", type=int, default=128, show_default=True)
@_FORMAT
@_guarded
def cauchy_probe(sandbox_path, target, eps, coeff_bound, v1_id, v2_id, precision, fmt):
    qmap = cauchy.load_sandbox(sandbox_path)
    ids = qmap.sandbox.ids
    v1 = qmap.sandbox.basis_vector(ids[0] if v1_id is None else v1_id)
    v2 = qmap.sandbox.basis_vector(ids[1] if v2_id is None else v2_id)
    tx, ty = (part.strip() for part in target.split(","))
    result = cauchy.density_probe(
        qmap, v1, v2, (tx, ty), eps,
        coeff_bound=coeff_bound, precision_bits=precision,
    )
    if result is None:
        _emit({"found": False}, fmt=fmt, code=EXIT_VERIFY_FAILED)
    r1, r2 = result
    _emit(
        {"found": True, "r1": format_rational(r1), "r2": format_rational(r2)},
        fmt=fmt,
    )


# -- cloud ----------------------------------------------------------------


@main.group("cloud")
def cloud_group():
    """Rational Costas clouds built by grid refinement."""


def _cloud_payload(state):
    return {
        "stages": state.stage,
        "points": [
            {
                "x": format_rational(p.x),
                "y": format_rational(p.y),
                "stage": p.stage,
                "cell": list(p.cell),
            }
            for p in state.points
        ],
    }


@cloud_group.command("build")
@click.option("--stages", type=int, required=True)
@click.option("--expanding", is_flag=True)
@click.option("--svg", "svg_path", type=click.Path(), default=None, help="write a static SVG scatter")
@click.option("--plot", type=click.Path(), default=None, help="render a matplotlib figure")
@_FORMAT
@_guarded
def cloud_build(stages, expanding, svg_path, plot, fmt):
    state = (
        cloud.expanding_cloud(stages) if expanding else cloud.build_cloud(stages)
    )
    coords = state.coordinates()
    if svg_path:
        plotting.write_cloud_svg(coords, svg_path)
    if plot:
        plotting.save_cloud_figure(coords, plot, title=f"cloud, {stages} stages")
    csv_text = "\n".join(
        ["x,y"] + [f"{float(x):.12f},{float(y):.12f}" for x, y in coords]
    )
    _emit(_cloud_payload(state), fmt=fmt, csv_text=csv_text)


@cloud_group.command("verify")
@click.option("--file", "path", type=click.Path(exists=True), required=True)
@_THREADS
@_FORMAT
@_guarded
def cloud_verify(path, threads, fmt):
    with open(path) as fh:
        obj = json.load(fh)
    if "payload" in obj:  # accept a full CLI envelope as well
        obj = obj["payload"]
    points = [
        (parse_rational(p["x"]), parse_rational(p["y"])) for p in obj["points"]
    ]
    report = cloud.verify_cloud(points)
    payload = {
        "ok": report.ok,
        "collisions": [
            {
                "pair_a": [[format_rational(v) for v in pt] for pt in a],
                "pair_b": [[format_rational(v) for v in pt] for pt in b],
                "vector": [format_rational(v) for v in vec],
            }
            for a, b, vec in report.collisions
        ],
    }
    code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    _emit(payload, fmt=fmt, code=code, csv_text="ok" if report.ok else "collisions")


if __name__ == "__main__":
    main()
