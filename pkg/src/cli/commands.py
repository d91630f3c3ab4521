"""
Command-line front end

Subcommands: realign, test, bound, construct, estimate, verify.
Exit codes: 0 on success, 1 when `test` certifies entanglement,
2 on usage, parse or validation errors.
"""

import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError as PydanticValidationError

from src import __version__
from src.cli.reports import build_report, clean, render
from src.core.bounds import b_sep, b_tilde, construction_feasible, separable_envelope
from src.core.construct import extremal_flat, extremal_spike, separable_witness
from src.core.criteria import is_certified_entangled, ppt_test, run_criteria
from src.core.explore import SearchConfig, SearchMode, maximize_esf
from src.core.symmetric import esf_all
from src.core.verify import DEFAULT_DIMS, SUITES, run_all
from src.data.matrix_file import parse_matrix_file, write_matrix_file
from src.linalg.bipartite import DensityMatrix, realign
from src.linalg.matcore import singular_values
from src.utils.errors import RealignBoundError
from src.utils.log import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ENTANGLED = 1
EXIT_USAGE = 2

MODES = {"all": SearchMode.ALL_STATES, "sep": SearchMode.SEPARABLE}

# (result, exit code, optional writer for --out)
Outcome = Tuple[Dict, int, Optional[Callable[[Path], None]]]


def _state_summary(rho: DensityMatrix) -> Dict:
    spectrum = singular_values(realign(rho))
    return {
        "dims": [rho.dims.m, rho.dims.n],
        "swapped": rho.swapped,
        "trace": rho.trace,
        "min_eigenvalue": rho.min_eigenvalue(),
        "realignment_spectrum": spectrum,
        "realignment_trace_norm": float(spectrum.sum()),
    }


# ===== SUBCOMMANDS =====

def cmd_realign(args: argparse.Namespace) -> Outcome:
    rho = parse_matrix_file(args.input)
    r = realign(rho)
    spectrum = singular_values(r)
    result = {
        "dims": [rho.dims.m, rho.dims.n],
        "swapped": rho.swapped,
        "shape": list(r.shape),
        "spectrum": spectrum,
        "trace_norm": float(spectrum.sum()),
        "esf": [{"ell": ell, "value": v} for ell, v in enumerate(esf_all(spectrum)[1:], start=1)],
    }
    result["realigned"] = {"re": r.real, "im": r.imag}

    def write(path: Path):
        with open(path, "w") as f:
            json.dump({"shape": list(r.shape), "re": r.real.tolist(), "im": r.imag.tolist()}, f)

    return result, EXIT_OK, write


def cmd_test(args: argparse.Namespace) -> Outcome:
    rho = parse_matrix_file(args.input)
    reports = run_criteria(rho, args.criterion)
    entangled = is_certified_entangled(reports)
    result = {
        "dims": [rho.dims.m, rho.dims.n],
        "swapped": rho.swapped,
        "certified_entangled": entangled,
        "reports": [r.as_dict() for r in reports],
    }
    return result, EXIT_ENTANGLED if entangled else EXIT_OK, None


def cmd_bound(args: argparse.Namespace) -> Outcome:
    if args.ell is None and not args.all_orders:
        raise RealignBoundError("bound needs --ell or --all-orders")
    orders = range(1, args.m * args.m + 1) if args.all_orders else [args.ell]

    rows = []
    for ell in orders:
        if args.sep:
            if args.m == args.n:
                rows.append({"ell": ell, "value": b_sep(args.n, ell), "exact": True})
            else:
                cap, exact = separable_envelope(args.m, args.n, ell)
                rows.append({"ell": ell, "value": None, "upper_bound": cap, "exact": exact})
        else:
            rows.append(b_tilde(args.m, args.n, ell).as_dict())

    result = {"bound": "B_sep" if args.sep else "B_tilde", "m": args.m, "n": args.n}
    if args.all_orders:
        result["orders"] = rows
    else:
        result.update(rows[0])
    if not args.sep:
        result["feasibility"] = construction_feasible(args.m, args.n).as_dict()
    return result, EXIT_OK, None


def cmd_construct(args: argparse.Namespace) -> Outcome:
    result = {"kind": args.kind}
    if args.kind == "flat":
        rho = extremal_flat(args.m, args.n)
    elif args.kind == "spike":
        rho, params = extremal_spike(args.m, args.n)
        result["params"] = params.as_dict()
    else:
        rho = separable_witness(args.n)
        ppt = ppt_test(rho)
        result["ppt"] = ppt.as_dict()
        result["separability_certified"] = ppt.ppt_is_sufficient and not ppt.entangled

    result.update(_state_summary(rho))
    result["matrix"] = {"re": rho.mat.real, "im": rho.mat.imag}
    return result, EXIT_OK, lambda path: write_matrix_file(rho, path)


def cmd_estimate(args: argparse.Namespace) -> Outcome:
    cfg = SearchConfig(
        m=args.m, n=args.n, ell=args.ell, budget=args.budget, seed=args.seed,
        mode=MODES[args.mode], seed_with_constructions=not args.no_seed_constructions,
    )
    outcome = maximize_esf(cfg, workers=args.workers)
    result = outcome.as_dict()

    writer = None
    if outcome.best_state is not None:
        state = outcome.best_state
        writer = lambda path: write_matrix_file(state, path)  # noqa: E731
    return result, EXIT_OK, writer


def cmd_verify(args: argparse.Namespace) -> Outcome:
    suites = args.suite or list(SUITES)
    frame = run_all(args.samples, args.seed, dims=DEFAULT_DIMS, suites=suites)
    rows = frame.to_dict("records")
    for row in rows:
        row["passed"] = row["violations"] == 0
    result = {
        "samples": args.samples,
        "seed": args.seed,
        "all_passed": all(row["passed"] for row in rows),
        "suites": rows,
    }
    return result, EXIT_OK, None


# ===== PARSER =====

def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64), got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per subcommand"""
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", type=Path, default=None,
                        help="write the produced matrix (or the report) to PATH")
    shared.add_argument("--format", choices=["json", "table"], default="json")
    shared.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="realignbound",
        description="Realignment and PPT criteria, ESF bounds and extremal states",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realign", parents=[shared], help="realignment matrix and spectrum")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.set_defaults(handler=cmd_realign)

    p = sub.add_parser("test", parents=[shared], help="CCNR / PPT separability tests")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--criterion", choices=["ccnr", "ppt", "both"], default="both")
    p.set_defaults(handler=cmd_test)

    p = sub.add_parser("bound", parents=[shared], help="closed-form ESF bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--sep", action="store_true", help="bound over separable states")
    p.add_argument("--all-orders", action="store_true", help="every ell in 1..m^2")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("construct", parents=[shared], help="extremal states")
    p.add_argument("--kind", choices=["flat", "spike", "witness"], required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("estimate", parents=[shared], help="randomised lower-bound search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mode", choices=sorted(MODES), default="all")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-seed-constructions", action="store_true")
    p.set_defaults(handler=cmd_estimate)

    p = sub.add_parser("verify", parents=[shared], help="property suites on sampled states")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    p.set_defaults(handler=cmd_verify)

    return parser


def _inputs(args: argparse.Namespace) -> Dict:
    echo = {k: v for k, v in vars(args).items() if k not in ("handler", "log_level")}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in echo.items()}


def _check_args(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.command == "construct" and args.kind in ("flat", "spike") and args.m is None:
        parser.error(f"construct --kind {args.kind} requires --m")
    if args.command == "estimate" and args.workers < 1:
        parser.error("--workers must be at least 1")
    if args.command == "verify" and args.samples < 0:
        parser.error("--samples must be nonnegative")


def run_command(argv: List[str], stdout=None, stderr=None) -> int:
    """
    Parse argv, run the subcommand and print its report

    Args:
        argv: Arguments without the program name
        stdout, stderr: Output streams (default sys.stdout / sys.stderr)

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()

    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
            _check_args(parser, args)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args.log_level)

    try:
        result, code, writer = args.handler(args)
    except PydanticValidationError as e:
        print(f"error: invalid {args.command} parameters: {e.errors()[0]['msg']}", file=stderr)
        return EXIT_USAGE
    except RealignBoundError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE

    report = build_report(args.command, _inputs(args), result)
    text = render(report, args.format)

    if args.out is not None:
        if writer is not None:
            writer(args.out)
        else:
            with open(args.out, "w") as f:
                json.dump(clean(report), f, indent=2)
        logger.info("wrote %s", args.out)

    print(text, file=stdout)
    return code
