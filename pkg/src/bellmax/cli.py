"""Command line interface.

Subcommands: ``violation`` (closed form and/or see-saw for one state),
``scan-k`` (table over every measurement index), ``threshold`` (noise
robustness of the isotropic family), ``gamma`` (operator dumps),
``optimize`` (raw see-saw) and ``verify`` (invariant suites). All output
is JSON on stdout (CSV for threshold grids); diagnostics go to stderr.

Exit codes: 0 success, 1 verification failure, 2 validation error,
3 I/O error, 4 closed form requested but not certified for the state.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import reporting
from .operators import make_gamma_set
from .seesaw import SeesawConfig, seesaw_maximize
from .states import QuantumState, load_state
from .verify import run_all_checks
from .violation import (
    ViolationReport,
    best_k,
    max_violation_closed_form,
    noise_threshold,
    scan_k,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_UNCERTIFIED = 4

#: Published threshold quoted for the 3-dimensional isotropic family;
#: echoed in threshold reports next to the independently derived value.
PUBLISHED_N3_THRESHOLD = 0.2566


class UncertifiedFormulaError(RuntimeError):
    """Closed-form output was requested for a state it does not certify."""


def _k_spec(text: str):
    if text == "best":
        return "best"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"k must be an integer or 'best', got {text!r}"
        ) from None


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomised work (default 0)")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the manifest timestamp (golden files)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellmax",
        description="Maximal violation of a CHSH-type inequality on NxN systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    p = sub.add_parser("violation", parents=[common],
                       help="closed-form and/or see-saw value for one state")
    p.add_argument("--state", required=True, help="path to a state JSON file")
    p.add_argument("--k", type=_k_spec, default="best",
                   help="measurement index (1-based) or 'best' (default)")
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="closed")
    p.set_defaults(func=cmd_violation)

    p = sub.add_parser("scan-k", parents=[common],
                       help="closed-form table over every measurement index")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_scan_k)

    p = sub.add_parser("threshold", parents=[common],
                       help="noise threshold of the isotropic family")
    p.add_argument("--N", type=int, required=True, dest="N")
    p.add_argument("--k", type=_k_spec, default="best")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--grid", type=int, default=None,
                   help="also evaluate a uniform grid with this many points")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("gamma", parents=[common],
                       help="dump one generator or the corner projector")
    p.add_argument("--N", type=int, required=True, dest="N")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--axis", choices=("x", "y", "z", "pi"), required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("optimize", parents=[common], help="raw see-saw run")
    p.add_argument("--state", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--constrain-y", action="store_true",
                   help="project the y components out of every update")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", parents=[common],
                       help="run the invariant suites of every module")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    return parser


def _manifest(args, parameters: dict) -> dict:
    parameters = dict(parameters)
    parameters["output"] = args.output
    return reporting.build_manifest(
        args.command, parameters, args.seed,
        include_timestamp=not args.no_timestamp,
    )


def _read_state(path: str) -> QuantumState:
    return load_state(Path(path).read_text(encoding="utf-8"))


def _print(text: str) -> None:
    sys.stdout.write(text)


def _oracle_report(state: QuantumState, k: int, cfg: SeesawConfig) -> ViolationReport:
    closed = max_violation_closed_form(state, k)
    result = seesaw_maximize(state, k, cfg)
    return ViolationReport(
        value=result.value,
        tau1=closed.tau1,
        tau2=closed.tau2,
        pi_term=closed.pi_term,
        k=k,
        formula_valid=closed.formula_valid,
        violated=bool(result.value - closed.lhv_bound > 1e-12),
        method="oracle",
    )


def cmd_violation(args) -> int:
    state = _read_state(args.state)
    cfg = SeesawConfig(seed=args.seed)
    if args.k == "best":
        k_used = best_k(state, cfg=cfg).k
    else:
        k_used = args.k
    closed = max_violation_closed_form(state, k_used)
    manifest = _manifest(args, {"state": args.state, "k": args.k, "method": args.method})
    if args.method == "closed":
        if not closed.formula_valid:
            raise UncertifiedFormulaError(
                "closed form is not certified for this state; "
                "use --method oracle or --method both"
            )
        payload = {"manifest": manifest, **closed.to_dict()}
    elif args.method == "oracle":
        payload = {"manifest": manifest, **_oracle_report(state, k_used, cfg).to_dict()}
    else:
        oracle = _oracle_report(state, k_used, cfg)
        payload = {
            "manifest": manifest,
            "closed_form": closed.to_dict(),
            "oracle": oracle.to_dict(),
            "abs_difference": abs(closed.value - oracle.value),
        }
    _print(reporting.to_json(payload))
    return EXIT_OK


def cmd_scan_k(args) -> int:
    state = _read_state(args.state)
    cfg = SeesawConfig(seed=args.seed)
    reports = scan_k(state)
    best = best_k(state, cfg=cfg)
    payload = {
        "manifest": _manifest(args, {"state": args.state}),
        "N": state.dim,
        "results": [rep.to_dict() for rep in reports],
        "best": best.to_dict(),
    }
    _print(reporting.to_json(payload))
    return EXIT_OK


def cmd_threshold(args) -> int:
    result = noise_threshold(args.N, k=args.k, tol=args.tol)
    grid_rows = None
    if args.grid is not None:
        if args.grid < 2:
            raise ValueError(f"--grid needs at least 2 points, got {args.grid}")
        from .states import IsotropicState

        xs = np.linspace(0.0, 1.0, args.grid)
        grid_rows = [
            (float(x),
             max_violation_closed_form(IsotropicState(args.N, float(x)), result.k_used).value,
             result.k_used)
            for x in xs
        ]
    if args.output == "csv":
        if grid_rows is None:
            raise ValueError("csv output requires --grid")
        _print(reporting.grid_csv(grid_rows))
        return EXIT_OK
    payload = {
        "manifest": _manifest(args, {"N": args.N, "k": args.k, "tol": args.tol,
                                     "grid": args.grid}),
        "N": args.N,
        "k_used": result.k_used,
        "x_star": result.x_star,
        "value_at_zero": result.value_at_zero,
        "tol": args.tol,
    }
    if args.N == 3:
        payload["paper_reference_value"] = PUBLISHED_N3_THRESHOLD
    if grid_rows is not None:
        payload["grid"] = [{"x": x, "value": v, "k": k} for x, v, k in grid_rows]
    _print(reporting.to_json(payload))
    return EXIT_OK


def cmd_gamma(args) -> int:
    gamma = make_gamma_set(args.N, args.k)
    matrix = {"x": gamma.gx, "y": gamma.gy, "z": gamma.gz, "pi": gamma.pi}[args.axis]
    payload = {
        "manifest": _manifest(args, {"N": args.N, "k": args.k, "axis": args.axis}),
        "N": args.N,
        "k": args.k,
        "axis": args.axis,
        "re": [[float(v) for v in row] for row in matrix.real],
        "im": [[float(v) for v in row] for row in matrix.imag],
    }
    _print(reporting.to_json(payload))
    return EXIT_OK


def cmd_optimize(args) -> int:
    state = _read_state(args.state)
    cfg = SeesawConfig(restarts=args.restarts, max_iters=args.max_iters,
                       tol=args.tol, seed=args.seed)
    result = seesaw_maximize(state, args.k, cfg, constrain_y=args.constrain_y)
    settings = result.settings
    payload = {
        "manifest": _manifest(args, {
            "state": args.state, "k": args.k, "restarts": args.restarts,
            "max_iters": args.max_iters, "tol": args.tol,
            "constrain_y": args.constrain_y,
        }),
        "k": args.k,
        "value": result.value,
        "settings": {
            "a1": [float(v) for v in settings.a1],
            "a2": [float(v) for v in settings.a2],
            "b1": [float(v) for v in settings.b1],
            "b2": [float(v) for v in settings.b2],
            "k": settings.k,
        },
        "iterations_used": result.iterations_used,
        "restarts_used": result.restarts_used,
        "converged": result.converged,
    }
    _print(reporting.to_json(payload))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all_checks(args.seed, args.samples)
    failed = [r for r in results if not r.passed]
    payload = {
        "manifest": _manifest(args, {"samples": args.samples}),
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "total": len(results),
        "passed": len(results) - len(failed),
        "failed": len(failed),
    }
    _print(reporting.to_json(payload))
    if failed:
        first = failed[0]
        print(f"verify failed: {first.name}: {first.detail}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UncertifiedFormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
