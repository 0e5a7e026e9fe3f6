"""Command-line entry point: ``evoalg <command> FILE [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import report
from .algebra import EvoAlgError
from .io import FormatError, parse_algebra, read_matrix
from .linalg import ShapeError

EXIT_OK, EXIT_DOMAIN, EXIT_FORMAT = 0, 1, 2

_EPILOG = """\
input files are JSON objects {"dim": n, "matrix": [[...], ...]} whose entries
are rational strings such as "3", "-3/4".  In a structure matrix row i lists
the coordinates of e_i^2.  In a --matrix basis change column j lists the
coordinates of the new vector f_j in the old basis.

exit codes: 0 success, 1 hypothesis or domain error, 2 malformed input.
"""


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoalg",
        description="Exact analysis of evolution algebras given by rational structure matrices.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "analyze": "full report: structure, decomposition, loops, derivations",
        "derivations": "derivation space, applicable criteria and explicit witnesses",
        "decompose": "natural decomposition, twin partition, ideals and graph data",
        "loops": "loop sets and invariance of the loop count under natural basis change",
        "canonical-volterra": "block-diagonal Volterra algebra with the same derivations",
        "change-basis": "structure matrix in the natural basis given by --matrix",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text, epilog=_EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("file", help="structure matrix JSON file")
        p.add_argument("--matrix", help="basis-change matrix JSON file (columns are new basis vectors)")
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        p.add_argument("--seed", type=_seed, help="seed for sampling random natural bases")
    return parser


def _run(args) -> dict:
    a = parse_algebra(args.file)
    cmd = args.command
    if cmd == "analyze":
        return report.analysis_report(a, args.seed)
    if cmd == "derivations":
        return report.derivations_report(a)
    if cmd == "decompose":
        return report.decomposition_report(a)
    if cmd == "loops":
        return report.loop_section(a, args.seed)
    if cmd == "canonical-volterra":
        return report.canonical_report(a)
    if args.matrix is None:
        raise FormatError("change-basis needs --matrix FILE")
    p = read_matrix(args.matrix)
    if len(p) != a.dim:
        raise FormatError(f"{args.matrix}: basis change has dimension {len(p)}, algebra has {a.dim}")
    return report.change_basis_report(a, p)


def _text(args, rep: dict) -> str:
    if args.command == "loops":
        conds = rep.get("sufficient_conditions") or []
        verdict = rep["verdict"] + (f" ({', '.join(conds)})" if conds else "")
        rest = {k: v for k, v in rep.items() if k not in ("verdict", "sufficient_conditions")}
        return f"verdict: {verdict}\n" + report.render_text(rest)
    return report.render_text(rep)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = _run(args)
    except (FormatError, ShapeError) as exc:
        print(f"evoalg: input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except EvoAlgError as exc:
        out = {"error": type(exc).__name__, "message": str(exc)}
        if args.json:
            print(json.dumps(out, indent=2))
        print(f"evoalg: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        sys.stdout.write(_text(args, rep))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
