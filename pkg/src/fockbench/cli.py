"""Command-line front end.

Exit codes: 0 success, 1 usage / parse / IO error, 2 a mathematical check failed.
Structured output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction

from . import sampling
from .asymptotics import (
    SeqSpecSyntaxError,
    counterexample_truncate,
    domain_report,
    first_crossing,
    parse_seq_spec,
)
from .fock import Workspace, WorkspaceError, grade_project, norm_sq, occupation_indices
from .operators import (
    annihilate,
    ccr_report,
    check_adjoint,
    creator_bound_report,
    number_identity_report,
    number_sqrt_norm_sq,
    theorem2_identity_report,
)
from .permanent import PermanentSizeError, matrix_from_json, permanent_naive, permanent_ryser
from .scalars import TAU, close, residual, scalar_to_json

SUITES = ("adjoint", "theorem1", "theorem2", "ccr", "sum-ca")


class UsageError(Exception):
    pass


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        for i, value in enumerate(obj):
            yield from _flatten(value, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, obj


def render_output(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _flatten(payload):
        writer.writerow([key, value if isinstance(value, str) else json.dumps(value)])
    return buf.getvalue().rstrip("\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if values != sorted(set(values)):
        raise argparse.ArgumentTypeError("N values must be strictly increasing")
    return values


def _workspace(args) -> Workspace:
    try:
        return Workspace(args.d, args.n_max, args.backend)
    except WorkspaceError as exc:
        raise UsageError(str(exc))


# ---- perm -----------------------------------------------------------------

def cmd_perm(args) -> tuple[dict, int]:
    if not args.matrix:
        raise UsageError("--matrix is required")
    try:
        with open(args.matrix) as fh:
            M = matrix_from_json(json.load(fh))
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"cannot read matrix {args.matrix}: {exc}")
    out = {}
    try:
        if args.algorithm in ("naive", "both"):
            out["naive"] = permanent_naive(M)
        if args.algorithm in ("ryser", "both"):
            out["ryser"] = permanent_ryser(M)
    except PermanentSizeError as exc:
        raise UsageError(str(exc))
    code = 0
    if args.algorithm == "both":
        agree = close(out["naive"], out["ryser"], args.tau)
        out["agree"] = agree
        code = 0 if agree else 2
    return {k: scalar_to_json(v) if k != "agree" else v for k, v in out.items()}, code


# ---- check ----------------------------------------------------------------

def _suite_adjoint(ws, rng, trials):
    for _ in range(trials):
        v = sampling.one_particle(rng, ws)
        psi = sampling.fock_vector(rng, ws, ws.n_max)
        phi = sampling.fock_vector(rng, ws, ws.n_max - 1)
        yield check_adjoint(v, psi, phi)


def _suite_theorem1(ws, rng, trials, extra):
    e1 = ws.basis(0)
    equality_on_powers = True
    equality_cases = 0
    for n in range(ws.n_max):
        for alpha in occupation_indices(ws.d, n):
            report = creator_bound_report(e1, ws.monomial(alpha))
            is_power = alpha[0] == n
            equality = "equality" in report.flags
            equality_cases += equality
            equality_on_powers &= equality == is_power
            yield report
    for _ in range(trials):
        u = sampling.unit_vector(rng, ws)
        phi = sampling.fock_vector(rng, ws, grade=rng.randint(0, ws.n_max - 1))
        yield creator_bound_report(u, phi)
    extra["equality_cases"] = equality_cases
    extra["equality_exactly_on_u_powers"] = equality_on_powers


def _suite_theorem2(ws, rng, trials):
    for _ in range(trials):
        yield theorem2_identity_report(sampling.fock_vector(rng, ws, ws.n_max))


def _suite_ccr(ws, rng, trials):
    for _ in range(trials):
        v = sampling.one_particle(rng, ws)
        w = sampling.one_particle(rng, ws)
        yield ccr_report(v, w, sampling.fock_vector(rng, ws, ws.n_max - 1))


def _suite_sum_ca(ws, rng, trials):
    for alpha in ws.indices(ws.n_max - 1):
        yield number_identity_report(ws.monomial(alpha))
    for _ in range(trials):
        yield number_identity_report(sampling.fock_vector(rng, ws, ws.n_max - 1))


def run_suite(suite: str, ws: Workspace, seed: int, trials: int) -> dict:
    """Run one identity suite and summarize it; deterministic in ``seed``."""
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if ws.n_max < 1:
        raise UsageError("check suites need n_max >= 1")
    rng = random.Random(seed)
    extra: dict = {}
    if suite == "adjoint":
        reports = _suite_adjoint(ws, rng, trials)
    elif suite == "theorem1":
        reports = _suite_theorem1(ws, rng, trials, extra)
    elif suite == "theorem2":
        reports = _suite_theorem2(ws, rng, trials)
    elif suite == "ccr":
        reports = _suite_ccr(ws, rng, trials)
    else:
        reports = _suite_sum_ca(ws, rng, trials)
    count = failures = 0
    max_residual = 0.0
    for report in reports:
        count += 1
        ok = report.equal and "mismatch" not in report.flags
        failures += not ok
        max_residual = max(max_residual, report.residual)
    summary = {
        "suite": suite,
        "d": ws.d,
        "n_max": ws.n_max,
        "backend": ws.backend,
        "seed": seed,
        "trials": count,
        "failures": failures,
        "max_residual": max_residual,
    }
    summary.update(extra)
    if extra.get("equality_exactly_on_u_powers") is False:
        summary["failures"] += 1
    return summary


def cmd_check(args) -> tuple[dict, int]:
    ws = _workspace(args)
    summary = run_suite(args.suite, ws, args.seed, args.trials)
    return summary, 0 if summary["failures"] == 0 else 2


# ---- domain ---------------------------------------------------------------

def cmd_domain(args) -> tuple[dict, int]:
    if args.spec is None:
        raise UsageError("--spec is required")
    try:
        spec = parse_seq_spec(args.spec)
    except SeqSpecSyntaxError as exc:
        raise UsageError(exc.caret())
    except ValueError as exc:
        raise UsageError(str(exc))
    report = domain_report(spec, args.N, args.threshold)
    payload = report.to_json()
    for key, series in (("in_fock", report.norm_spec), ("in_sqrtN_domain", report.sqrtN_spec)):
        if not payload[key]["converges"]:
            payload[key]["threshold"] = args.threshold
            payload[key]["crossing_N"] = first_crossing(series, args.threshold, args.N[-1])
    return payload, 0


# ---- counterexample -------------------------------------------------------

def cmd_counterexample(args) -> tuple[dict, int]:
    d = args.d
    n_max = args.n_max if args.n_max is not None else d
    if d > n_max:
        raise UsageError(f"d={d} exceeds n_max={n_max}")
    try:
        phi = counterexample_truncate(d, n_max)
    except WorkspaceError as exc:
        raise UsageError(str(exc))
    ws = phi.workspace
    if args.v is None:
        coords = [1.0] * d
    else:
        try:
            coords = [float(Fraction(x)) for x in args.v.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse --v {args.v!r}")
        if len(coords) != d:
            raise UsageError(f"--v has {len(coords)} coordinates, d={d}")
    v = ws.one_particle(coords)
    grade_norms = [norm_sq(grade_project(phi, n)) for n in range(1, d + 1)]
    harmonic = math.fsum(1 / n for n in range(1, d + 1))
    sqrt_n = number_sqrt_norm_sq(phi)
    ann = norm_sq(annihilate(v, phi))
    bound = v.norm_sq()
    checks = {
        "grade_norms_match": all(close(g, 1 / n ** 2, args.tau)
                                 for n, g in enumerate(grade_norms, start=1)),
        "sqrtN_matches_harmonic": close(sqrt_n, harmonic, args.tau),
        "annihilator_bound": ann <= bound * (1 + args.tau),
    }
    payload = {
        "d": d,
        "v": coords,
        "grade_norms": grade_norms,
        "norm_sq": norm_sq(phi),
        "number_sqrt_norm_sq": sqrt_n,
        "harmonic_sum": harmonic,
        "annihilator_norm_sq": ann,
        "v_norm_sq": bound,
        "max_grade_norm_residual": max(residual(g, 1 / n ** 2)
                                       for n, g in enumerate(grade_norms, start=1)),
        "checks": checks,
    }
    return payload, 0 if all(checks.values()) else 2


# ---- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=3)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--tau", type=float, default=TAU)
    common.add_argument("--threshold", type=float, default=12.0,
                        help="divergence threshold for partial-sum witnesses")
    common.add_argument("--N", type=_int_list, default=[100, 10_000, 100_000],
                        help="comma-separated witness cutoffs, e.g. 100,10000,100000")

    parser = argparse.ArgumentParser(prog="fockbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perm", parents=[common], help="matrix permanent")
    p.add_argument("--matrix", help="path to {'n': int, 'entries': [[...]]} JSON")
    p.add_argument("--algorithm", choices=("naive", "ryser", "both"), default="both")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("check", parents=[common], help="operator identity suites")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("domain", parents=[common], help="domain report for |lambda_n|^2")
    p.add_argument("--spec", help='sequence spec for |lambda_n|^2, e.g. "fact(n)^1 * n^-2"')
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("counterexample", parents=[common],
                       help="truncated infinite-dimensional counterexample")
    p.add_argument("--v", help="comma-separated real coordinates of v (default all ones)")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.n_max is None and args.command != "counterexample":
        args.n_max = 5
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        print(f"fockbench: error: {exc}", file=sys.stderr)
        return 1
    print(render_output(payload, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
