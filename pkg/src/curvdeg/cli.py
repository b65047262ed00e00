"""Command-line front end: crit, invariants, degree, blowup, selftest.

Reports are deterministic for a fixed problem file and seed: the JSON
document is byte-identical across runs except for the wall_time_s field,
which callers should strip before comparing.
"""

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__
from .critical import find_critical_points
from .degree import degree_profile
from .errors import BreakpointError, CurvdegError, InconclusiveError
from .invariants import analyze
from .problems import load_problem, problem_to_dict
from .reduction import blowup_curves, curves_to_csv
from .selftest import run_all

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SILENT = 2  # the theorem gives no conclusion (d = 0, breakpoint, inconclusive)


def _input_hash(problem):
    payload = json.dumps(problem_to_dict(problem), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _record_row(record):
    return {
        "location": [float(c) for c in record.location.coords],
        "grad_norm": record.grad_norm,
        "hessian_eigs": list(record.hessian_eigs),
        "morse_index": record.morse_index,
        "laplacian": record.laplacian,
        "sign_laplacian": record.sign_laplacian,
    }


def _invariant_row(inv):
    return {
        **_record_row(inv.record),
        "a0": inv.a0,
        "a0_error": inv.a0_error,
        "a1": inv.a1,
        "a2": inv.a2,
        "in_M": inv.in_M,
        "breakpoint": inv.breakpoint,
    }


def _base_report(args, problem, command):
    return {
        "tool": "curvdeg",
        "version": __version__,
        "command": command,
        "input_hash": _input_hash(problem),
        "options": {**problem.option_dict, "seed": args.seed, "tol": args.tol},
    }


def _finish(report, args, started, exit_code=EXIT_OK):
    report["wall_time_s"] = time.time() - started
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return exit_code


def cmd_crit(args, problem, started):
    records = find_critical_points(problem.spec, n_starts=args.n_starts,
                                   seed=args.seed)
    report = _base_report(args, problem, "crit")
    report["critical_points"] = [_record_row(r) for r in records]
    print(f"{len(records)} critical points")
    print(f"{'location':42s} {'index':>5s} {'laplacian':>12s} {'sign':>4s}")
    for r in records:
        loc = "(" + ", ".join(f"{c:+.6f}" for c in r.location.coords) + ")"
        print(f"{loc:42s} {r.morse_index:5d} {r.laplacian:12.6f} {r.sign_laplacian:4d}")
    return _finish(report, args, started)


def cmd_invariants(args, problem, started):
    analysis = analyze(problem.spec, n_starts=args.n_starts, seed=args.seed,
                       tol=args.tol)
    report = _base_report(args, problem, "invariants")
    report["invariants"] = [_invariant_row(inv) for inv in analysis.invariants]
    report["T"] = list(analysis.breakpoints())
    print(f"{'location':42s} {'a0':>12s} {'a1':>12s} {'a2':>12s} {'in_M':>5s}")
    for inv in analysis.invariants:
        loc = "(" + ", ".join(f"{c:+.6f}" for c in inv.record.location.coords) + ")"
        print(f"{loc:42s} {inv.a0:12.4e} {inv.a1:12.6f} {inv.a2:12.6f}"
              f" {str(inv.in_M):>5s}")
    print("breakpoint set T:", set(analysis.breakpoints()) or "{}")
    return _finish(report, args, started)


def cmd_degree(args, problem, started):
    rep = degree_profile(problem.spec, n_starts=args.n_starts, seed=args.seed,
                         tol=args.tol)
    lo, hi = problem.t_range
    report = _base_report(args, problem, "degree")
    report["breakpoints"] = list(rep.breakpoints)
    report["intervals"] = [
        {"t_lo": a, "t_hi": b, "degree": d, "solvable": s}
        for a, b, d, s in rep.intervals]
    any_solvable = False
    for a, b, d, s in rep.intervals:
        if b <= lo or a >= hi:
            continue
        verdict = "solvable" if s else "no conclusion"
        if d == 0:
            verdict += " (consistent with the obstruction for monotone curvatures)"
        print(f"t in ({max(a, lo):.6g}, {min(b, hi):.6g}]: d = {d:+d}  {verdict}")
        any_solvable = any_solvable or s
    if rep.breakpoints:
        print("degrees undefined at breakpoints:", list(rep.breakpoints))
    return _finish(report, args, started,
                   EXIT_OK if any_solvable else EXIT_SILENT)


def cmd_blowup(args, problem, started):
    curves = blowup_curves(problem.spec, args.t0, n_starts=args.n_starts,
                           seed=args.seed, tol=args.tol)
    report = _base_report(args, problem, "blowup")
    report["t0"] = args.t0
    report["curves"] = [
        {"theta": [float(c) for c in curve.theta.coords],
         "slope": curve.slope,
         "morse_index": curve.morse_index,
         "samples": [{"mu": m, "s": s, "y": list(y)} for m, s, y in curve.samples]}
        for curve in curves]
    if not curves:
        print(f"no blow-up curves: M* is empty at t0 = {args.t0}")
    for idx, curve in enumerate(curves):
        loc = "(" + ", ".join(f"{c:+.4f}" for c in curve.theta.coords) + ")"
        print(f"curve {idx}: theta = {loc}, slope = {curve.slope:.6g}, "
              f"morse index = {curve.morse_index}, {len(curve.samples)} samples")
    if args.csv:
        curves_to_csv(curves, args.csv)
        print("samples written to", args.csv)
    return _finish(report, args, started,
                   EXIT_OK if curves else EXIT_SILENT)


def cmd_selftest(args, problem, started):
    failures = run_all()
    report = {"tool": "curvdeg", "version": __version__, "command": "selftest",
              "failures": failures}
    return _finish(report, args, started,
                   EXIT_OK if failures == 0 else EXIT_ERROR)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvdeg",
        description="Solvability certificates for prescribed scalar curvature "
                    "on the 3-sphere: critical points, local invariants, "
                    "degree counts, and blow-up curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {"crit": cmd_crit, "invariants": cmd_invariants,
                "degree": cmd_degree, "blowup": cmd_blowup,
                "selftest": cmd_selftest}
    for name, handler in handlers.items():
        p = sub.add_parser(name)
        if name != "selftest":
            p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--t0", type=float, default=1.0,
                       help="homotopy parameter for blow-up tracing")
        p.add_argument("--seed", type=int, default=None,
                       help="override the problem file's search seed")
        p.add_argument("--json", metavar="PATH", default=None,
                       help="write the machine-readable report here")
        p.add_argument("--tol", type=float, default=None,
                       help="override the quadrature tolerance")
        if name == "blowup":
            p.add_argument("--csv", metavar="PATH", default=None,
                           help="write curve samples as CSV")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.time()
    problem = None
    try:
        if getattr(args, "file", None):
            problem = load_problem(args.file)
        if problem is not None:
            opts = problem.option_dict
            args.seed = opts["seed"] if args.seed is None else args.seed
            args.tol = opts["tol"] if args.tol is None else args.tol
            args.n_starts = opts["n_starts"]
        else:
            args.seed = 0 if args.seed is None else args.seed
            args.tol = 1e-6 if args.tol is None else args.tol
            args.n_starts = 512
        return args.handler(args, problem, started)
    except (InconclusiveError, BreakpointError) as exc:
        print(f"no conclusion: {exc}", file=sys.stderr)
        return EXIT_SILENT
    except (CurvdegError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
