"""Command line interface.

Subcommands:

* ``reduce``      planar system file -> Lienard system file
* ``conditions``  system file -> JSON list of condition polynomials
* ``eliminate``   system file -> solved odd coefficients + residuals
* ``verify``      system file + h table -> check the center identities
* ``bench``       system file -> timing grid over variants and orders

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 resource abort (every benchmark cell aborted).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bench import ResourceAbort, run_bench
from .conditions import (
    InvalidSystemError,
    UrabeSeries,
    VARIANTS,
    normalize_variant,
    run_variant,
)
from .lienard import LienardSystem, PlanarSystem, ReductionError, cherkas_reduce
from .rationals import parse_rat
from .systemfile import (
    SystemFormatError,
    emit_system,
    parse_system,
    parse_urabe_table,
)
from .urabe import eliminate_urabe, verify_cri, verify_phi_identity

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


class InputError(Exception):
    """Invalid input of any kind; maps to exit code 2."""


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def _load_system(path):
    try:
        return parse_system(_load_json(path))
    except SystemFormatError as e:
        raise InputError(f"{path}: {e}") from e


def _ensure_lienard(system) -> LienardSystem:
    if isinstance(system, PlanarSystem):
        try:
            system = cherkas_reduce(system)
        except ReductionError as e:
            raise InputError(str(e)) from e
        print("note: planar input reduced to Lienard form", file=sys.stderr)
    return system


def _emit(obj, out_path):
    text = json.dumps(obj, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_urabe_table(path) -> UrabeSeries:
    try:
        return parse_urabe_table(_load_json(path))
    except SystemFormatError as e:
        raise InputError(f"{path}: {e}") from e


def _urabe_for(args, M) -> UrabeSeries:
    """Resolve the h series for ``conditions``/``eliminate``.

    ``--urabe PATH`` supplies a concrete rational table (any length; absent
    entries are zero, an empty table is h = 0).  ``--urabe-count N`` asks
    for N symbolic coefficients, which must cover order M.  Default: the
    minimal symbolic count for M.
    """
    if args.urabe is not None and args.urabe_count is not None:
        raise InputError("--urabe and --urabe-count are mutually exclusive")
    if args.urabe is not None:
        return _load_urabe_table(args.urabe)
    if args.urabe_count is None:
        return UrabeSeries.for_order(M)
    need = UrabeSeries.min_count_for_order(M)
    if args.urabe_count < need:
        raise InputError(
            f"--urabe-count {args.urabe_count} is below the minimum {need} for order {M}"
        )
    return UrabeSeries.symbolic(args.urabe_count)


def _parse_bindings(pairs):
    out = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise InputError(f"--bind expects name=value, got {pair!r}")
        try:
            out[name] = parse_rat(value)
        except ValueError as e:
            raise InputError(f"--bind {name}: {e}") from e
    return out


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_reduce(args) -> int:
    system = _load_system(args.input)
    if isinstance(system, LienardSystem):
        raise InputError("input is already of Lienard type; nothing to reduce")
    try:
        reduced = cherkas_reduce(system)
    except ReductionError as e:
        raise InputError(str(e)) from e
    _emit(emit_system(reduced), args.out)
    return EXIT_OK


def cmd_conditions(args) -> int:
    system = _ensure_lienard(_load_system(args.input))
    urabe = _urabe_for(args, args.order)
    try:
        trace = run_variant(system, urabe, args.order, args.algo)
    except (InvalidSystemError, ValueError) as e:
        raise InputError(str(e)) from e
    _emit(trace.conditions.to_json_dict(), args.out)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    system = _ensure_lienard(_load_system(args.input))
    urabe = _urabe_for(args, args.order)
    try:
        trace = run_variant(system, urabe, args.order, args.algo)
    except (InvalidSystemError, ValueError) as e:
        raise InputError(str(e)) from e
    result = eliminate_urabe(trace.conditions)
    summary = result.to_json_dict()
    _emit(summary, args.out)
    nonzero = len(result.nonzero_residuals())
    print(
        f"solved {len(result.steps)} coefficients, "
        f"{len(result.residuals)} residual conditions "
        f"({nonzero} nonzero)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    system = _ensure_lienard(_load_system(args.input))
    bindings = _parse_bindings(args.bind)
    if bindings:
        unknown = [n for n in bindings if n not in system.ctx]
        if unknown:
            raise InputError(f"--bind names not declared by the system: {unknown}")
        system = system.substitute(bindings)
    free = set()
    for part in (system.f.num, system.f.den, system.g.num, system.g.den):
        for c in part.coeffs:
            free |= c.variables_used()
    if free:
        raise InputError(
            f"system still has free parameters {sorted(free)}; bind them with --bind"
        )
    table = _load_urabe_table(args.urabe)
    results = [
        verify_cri(system, table, args.order),
        verify_phi_identity(system, table, args.order),
    ]
    ok = True
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.describe()}")
        ok = ok and r.ok
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_bench(args) -> int:
    system = _ensure_lienard(_load_system(args.input))
    try:
        orders = [int(tok) for tok in args.orders.split(",") if tok]
        if not orders or any(M < 1 for M in orders):
            raise ValueError
    except ValueError:
        raise InputError(f"--orders expects a comma list of positive integers, got {args.orders!r}")
    try:
        variants = [normalize_variant(tok) for tok in args.algos.split(",") if tok]
    except ValueError as e:
        raise InputError(str(e))
    if not variants:
        raise InputError("--algos selected no variants")
    try:
        report = run_bench(
            system,
            orders,
            variants,
            timeout=args.timeout,
            mem_cap=args.mem_cap,
            repeat=args.repeat,
            parallel=args.parallel,
            progress=lambda line: print(line, file=sys.stderr),
        )
    except ValueError as e:
        raise InputError(str(e)) from e
    print(report.render_table())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2)
            fh.write("\n")
    if not report.completed():
        print("every cell aborted on resources", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isochron",
        description="Exact necessary conditions for isochronous centers "
        "of Lienard-type systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a planar system file to Lienard form")
    p.add_argument("input", help="planar system JSON file")
    p.add_argument("-o", "--out", help="write the reduced system here (default stdout)")
    p.set_defaults(func=cmd_reduce)

    algo_help = "variant, one of " + "/".join(sorted(VARIANTS)) + " (default %(default)s)"

    p = sub.add_parser("conditions", help="compute the condition polynomials")
    p.add_argument("input", help="system JSON file (planar input is reduced first)")
    p.add_argument("--order", type=int, required=True, metavar="M", help="number of conditions")
    p.add_argument("--algo", default="A4", help=algo_help)
    p.add_argument(
        "--urabe-count",
        type=int,
        metavar="N",
        help="symbolic odd h-coefficients (default floor((M-1)/2))",
    )
    p.add_argument("--urabe", metavar="PATH",
                   help="concrete h-coefficient table JSON (empty table = h = 0)")
    p.add_argument("-o", "--out", help="write the JSON here (default stdout)")
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser(
        "eliminate", help="solve the odd h-coefficients out of the conditions"
    )
    p.add_argument("input", help="system JSON file (planar input is reduced first)")
    p.add_argument("--order", type=int, required=True, metavar="M")
    p.add_argument("--algo", default="A4", help=algo_help)
    p.add_argument("--urabe-count", type=int, metavar="N",
                   help="symbolic odd h-coefficients (default floor((M-1)/2))")
    p.add_argument("--urabe", metavar="PATH",
                   help="concrete h-coefficient table JSON (empty table = h = 0)")
    p.add_argument("-o", "--out", help="write the JSON here (default stdout)")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("verify", help="verify the center identities for a concrete h")
    p.add_argument("input", help="system JSON file (planar input is reduced first)")
    p.add_argument("--urabe", required=True, help="h-coefficient table JSON file")
    p.add_argument("--order", type=int, required=True, metavar="N", help="series order to check")
    p.add_argument(
        "--bind",
        action="append",
        metavar="NAME=VALUE",
        help="bind a system parameter to an exact rational (repeatable)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the variants on a grid of orders")
    p.add_argument("input", help="system JSON file (planar input is reduced first)")
    p.add_argument("--orders", default="10,15", help="comma list of orders (default %(default)s)")
    p.add_argument(
        "--algos",
        default="A1,A2,A3,A4,A5",
        help="comma list of variants (default %(default)s)",
    )
    p.add_argument("--timeout", type=float, default=120.0,
                   help="per-cell wall clock limit in seconds (default %(default)s)")
    p.add_argument("--mem-cap", type=int, default=None, metavar="BYTES",
                   help="RSS cap per process (default 4 GiB; ISOCHRON_MEM_CAP overrides)")
    p.add_argument("--repeat", type=int, default=1,
                   help="repetitions per cell, median reported (default %(default)s)")
    p.add_argument("--parallel", action="store_true",
                   help="run cells in worker processes (noisier timings)")
    p.add_argument("--json", metavar="PATH", help="also write the full report as JSON")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceAbort as e:
        print(f"aborted: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
