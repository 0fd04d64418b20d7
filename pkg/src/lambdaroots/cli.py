"""Command-line interface.

Exit status: 0 success, 1 a verification record failed, 2 usage error,
3 g* search ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__, checks
from .admissible import admissible_multiples, verify_dichotomy
from .characters import conductor, phi_star
from .output import FORMATS, emit, to_jsonable
from .psi import psi1_scaling_report
from .sieve import SieveInstance, shifted_lower_bound
from .unitgroup import DEFAULT_CEILING, CeilingExceeded, clamped_omega_phi, g_star, grh_scale, lambda_density, decompose

JOBS_ENV = "LAMBDAROOTS_JOBS"

GSTAR_FIELDS = ["q", "gstar", "E", "c0", "grh_ratio", "omega_phi", "omega_clamped"]
PHISTAR_FIELDS = ["q", "character", "order", "conductor", "principal"]
ADMISSIBLE_FIELDS = ["q", "x", "count", "multiples"]
CRAFTY_FIELDS = ["q_min", "q_max", "y", "n_max", "checked", "admissible",
                 "forced_inadmissible", "violations"]
SIEVE_FIELDS = ["N", "upsilon", "y", "z", "S", "bound", "R", "R_observed",
                "main_sum", "abs_lambda_sum", "sound"]
PSI1_FIELDS = ["q", "character", "x", "sigma", "psi1", "ratio"]
VERIFY_FIELDS = ["check", "passed", "details"]


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"7"`` -> (7, 7); ``"3..30"`` -> (3, 30)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"malformed list {text!r}") from None


def _num(x: float):
    return int(x) if float(x).is_integer() else x


def gstar_record(q: int, ceiling: int = DEFAULT_CEILING) -> dict:
    g = g_star(q, ceiling)
    w, clamped = clamped_omega_phi(q)
    return {
        "q": q,
        "gstar": g,
        "E": decompose(q).exponent,
        "c0": lambda_density(q),
        "grh_ratio": g / grh_scale(q) if q >= 3 else None,
        "omega_phi": 0 if clamped else w,
        "omega_clamped": clamped,
    }


def _gstar_task(args):
    q, ceiling = args
    try:
        return gstar_record(q, ceiling)
    except CeilingExceeded as exc:
        return {"q": q, "error": str(exc)}


def _cmd_gstar(args, status):
    lo, hi = parse_range(args.q)
    if lo < 2:
        raise UsageError("moduli must be >= 2")
    if args.resume_from is not None:
        lo = max(lo, args.resume_from)
    tasks = [(q, args.ceiling) for q in range(lo, hi + 1)]

    def records():
        if args.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = pool.map(_gstar_task, tasks, chunksize=max(1, len(tasks) // (16 * args.jobs)))
                yield from _stop_on_error(results, status)
        else:
            yield from _stop_on_error(map(_gstar_task, tasks), status)

    return records(), GSTAR_FIELDS


def _stop_on_error(results, status):
    for rec in results:
        if "error" in rec:
            status["code"] = 3
            status["message"] = rec["error"]
            return
        yield rec


def _cmd_phistar(args, status):
    q = args.q
    if q < 2:
        raise UsageError("modulus must be >= 2")
    recs = ({"q": q, "character": list(chi.exponents), "order": chi.order,
             "conductor": conductor(chi), "principal": chi.is_principal}
            for chi in phi_star(q))
    return recs, PHISTAR_FIELDS


def _cmd_admissible(args, status):
    if args.q < 2:
        raise UsageError("modulus must be >= 2")
    if args.x < 0:
        raise UsageError("x must be >= 0")
    mult = admissible_multiples(args.x, args.q)
    return [{"q": args.q, "x": _num(args.x), "count": len(mult), "multiples": mult}], ADMISSIBLE_FIELDS


def _cmd_crafty(args, status):
    lo, hi = parse_range(args.q)
    if lo < 2:
        raise UsageError("moduli must be >= 2")
    ys = parse_floats(args.y)
    if not ys or min(ys) <= 1:
        raise UsageError("y values must exceed 1")
    s = verify_dichotomy(range(lo, hi + 1), ys, args.n)
    if s.violations:
        status["code"] = 1
    rec = {"q_min": lo, "q_max": hi, "y": [_num(y) for y in ys], "n_max": args.n,
           "checked": s.checked, "admissible": s.admissible,
           "forced_inadmissible": s.forced_inadmissible, "violations": s.violations}
    return [rec], CRAFTY_FIELDS


def _cmd_sieve(args, status):
    if args.N < 1 or args.upsilon < 1:
        raise UsageError("N and upsilon must be positive")
    try:
        inst = SieveInstance.integers(args.N, args.upsilon, R=args.R)
        b = shifted_lower_bound(inst, args.y, c2=args.c2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sound = b.value <= b.S
    if not sound:
        status["code"] = 1
    rec = {"N": args.N, "upsilon": args.upsilon, "y": None if b.z == 1 else _num(b.y),
           "z": b.z, "S": b.S, "bound": b.value, "R": args.R, "R_observed": b.R_observed,
           "main_sum": b.main_sum, "abs_lambda_sum": b.abs_sum, "sound": sound}
    return [rec], SIEVE_FIELDS


def _cmd_psi1(args, status):
    xs = parse_floats(args.x) if args.x else []
    try:
        rep = psi1_scaling_report(args.q, args.sigma, xs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    recs = ({"q": rep.q, "character": list(chi), "x": _num(x), "sigma": rep.sigma,
             "psi1": v, "ratio": r} for chi, x, v, r in rep.rows())
    return recs, PSI1_FIELDS


def _cmd_verify(args, status, log=None):
    names = args.only.split(",") if args.only else None
    if names:
        unknown = [n for n in names if n not in checks.ALL_CHECKS]
        if unknown:
            raise UsageError(f"unknown checks {unknown}; choose from {list(checks.ALL_CHECKS)}")

    def records():
        for res in checks.run_checks(names, quick=args.quick, seed=args.seed):
            if not res.passed:
                status["code"] = 1
            if log is not None:
                log.write(res.line() + "\n")
            yield res.record()

    return records(), VERIFY_FIELDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambdaroots",
        description="Least prime lambda-roots, Dirichlet characters and shifted-sieve checks.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="jsonl")
    common.add_argument("--jobs", type=int, default=int(os.environ.get(JOBS_ENV, "1")),
                        help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-header", action="store_true",
                        help="do not write the run header to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gstar", parents=[common], help="least prime lambda-root of q or a range")
    p.add_argument("q", help="modulus or range A..B")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    p.add_argument("--resume-from", type=int, default=None, metavar="Q")
    p.set_defaults(handler=_cmd_gstar)

    p = sub.add_parser("phistar", parents=[common], help="Phi*(q) with orders and conductors")
    p.add_argument("q", type=int)
    p.set_defaults(handler=_cmd_phistar)

    p = sub.add_parser("admissible", parents=[common], help="admissible multiples of q up to x")
    p.add_argument("q", type=int)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(handler=_cmd_admissible)

    p = sub.add_parser("craftylem-verify", parents=[common],
                       help="exhaustive (i)-or-(ii) check for admissible multiples")
    p.add_argument("--q", default="3..30", help="range of base moduli")
    p.add_argument("--y", default="2,3,5", help="comma-separated y values")
    p.add_argument("--n", type=int, default=500, help="largest cofactor n")
    p.set_defaults(handler=_cmd_crafty)

    p = sub.add_parser("sieve-demo", parents=[common],
                       help="shifted-sieve lower bound vs exact count on 1..N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--upsilon", type=int, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.set_defaults(handler=_cmd_sieve)

    p = sub.add_parser("psi1", parents=[common], help="psi_1 scaling report over Phi*(q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--x", default="10,100,1000", help="comma-separated grid")
    p.set_defaults(handler=_cmd_psi1)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--quick", action="store_true", help="smaller sweeps")
    p.add_argument("--only", default=None, help=f"comma-separated subset of {','.join(checks.ALL_CHECKS)}")
    p.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("lambdaroots: error: --jobs must be >= 1", file=stderr)
        return 2
    status = {"code": 0}
    try:
        if args.handler is _cmd_verify:
            records, fields = _cmd_verify(args, status, log=stderr)
        else:
            records, fields = args.handler(args, status)
        if not args.no_header:
            header = {k: v for k, v in vars(args).items() if k != "handler"}
            stderr.write(json.dumps(to_jsonable(header), sort_keys=True) + "\n")
        emit(records, args.format, stdout, fields)
    except UsageError as exc:
        print(f"lambdaroots: error: {exc}", file=stderr)
        return 2
    if status["code"] == 3:
        print(f"lambdaroots: error: {status['message']}", file=stderr)
    return status["code"]


def run() -> None:
    sys.exit(main())
