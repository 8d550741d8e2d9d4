"""Command-line driver: parse a problem, saturate, report SZS status.

Exit codes: 0 unsatisfiable, 1 satisfiable, 2 resource limit hit, 3 bad
input (unreadable file, parse error, arity conflict, or bad usage).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .clauses import ClauseFactory
from .saturation import ProverConfig, SatStatus, saturate
from .terms import Signature, SignatureError
from .tptp import ParseError, emit_result, parse_problem

_EXIT_CODES = {
    SatStatus.UNSATISFIABLE: 0,
    SatStatus.SATURATED: 1,
    SatStatus.RESOURCE_OUT: 2,
}


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors, same exit code as unreadable files
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(3)


def _switch(value: str) -> bool:
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdprover", description="Saturation prover for first-order logic with equality.")
    parser.add_argument("path", nargs="?", default="-", help="TPTP CNF problem file, or - for stdin")
    parser.add_argument("--fsd", choices=("on", "off"), default="on", help="forward subsumption demodulation")
    parser.add_argument("--bsd", choices=("on", "off"), default="on", help="backward subsumption demodulation")
    parser.add_argument("--time-limit", type=float, default=60.0, help="seconds before giving up (0 = none)")
    parser.add_argument("--clause-limit", type=int, default=100000, help="clause count cap (0 = none)")
    parser.add_argument("--match-limit", type=int, default=0, help="match enumeration cap per clause pair (0 = none)")
    parser.add_argument("--proof", choices=("on", "off"), default="on", help="print the derivation on refutation")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 3
    try:
        if args.path == "-":
            text = sys.stdin.read()
            path = None
        else:
            with open(args.path, encoding="utf-8") as handle:
                text = handle.read()
            path = args.path
        sig = Signature()
        factory = ClauseFactory()
        problem = parse_problem(text, sig, factory, path=path)
    except (OSError, ParseError, SignatureError) as exc:
        print(f"sdprover: {exc}", file=sys.stderr)
        return 3
    config = ProverConfig(
        fsd=_switch(args.fsd),
        bsd=_switch(args.bsd),
        time_limit=args.time_limit,
        clause_limit=args.clause_limit,
        match_limit=args.match_limit,
        proof=_switch(args.proof),
    )
    result = saturate(problem.clauses, config, factory)
    print(emit_result(result, sig, proof=config.proof))
    return _EXIT_CODES[result.status]


if __name__ == "__main__":
    raise SystemExit(main())
