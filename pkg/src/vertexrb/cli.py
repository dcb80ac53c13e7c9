"""Command-line driver.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad input.
Algebra and operator arguments are file paths or bundled fixture names.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, TextIO

from . import axioms, cohomology, io, rota_baxter
from .algebra import AlgebraValidationError, UnknownGeneratorError
from .axioms import NoVacuumError
from .cohomology import Cochain1, HypothesisNotMetError
from .rota_baxter import OperatorValidationError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Usage(Exception):
    def __init__(self, code):
        self.code = code


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _Usage(status)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument(
        "--strict-torsion",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="reject d-powers that vanish on torsion generators instead of dropping them",
    )
    parser = _Parser(prog="vertexrb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-axioms", parents=[common], help="check the vertex algebra axioms")
    p.add_argument("algebra")
    p.add_argument("--unital", action="store_true", help="also check the vacuum axiom")

    for name, help_ in (
        ("check-rb", "check the Rota-Baxter identity"),
        ("check-homomorphism", "check I_{Pa,Pb} = P(I*_{a,b})"),
        ("check-cocycle", "check that Phi = I* - I is a 2-cocycle"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("algebra")
        p.add_argument("operator")

    p = sub.add_parser("deform", parents=[common], help="write the deformed algebra")
    p.add_argument("algebra")
    p.add_argument("operator")
    p.add_argument("--out", required=True)

    p = sub.add_parser("check-coboundary", parents=[common], help="test Phi = delta(psi)")
    p.add_argument("algebra")
    p.add_argument("operator")
    p.add_argument("--psi", help="operator file for the 1-cochain (default: psi = P)")

    p = sub.add_parser("solve-scalar", parents=[common], help="rational roots of the scalar equations")
    p.add_argument("--weight", required=True)
    p.add_argument("--kind", choices=("coboundary", "rb"), default="coboundary")

    sub.add_parser("list-fixtures", parents=[common], help="list bundled fixtures")
    return parser


class _Output:
    def __init__(self, command: str, fmt: str, stream: TextIO):
        self.command = command
        self.fmt = fmt
        self.stream = stream
        self.reports = []
        self.skipped = []
        self.extra = {}

    def add(self, report):
        self.reports.append(report)

    def skip(self, check_name, reason):
        self.skipped.append({"check_name": check_name, "reason": reason})

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def emit(self, code: int):
        if self.fmt == "json":
            doc = {
                "command": self.command,
                "passed": self.passed,
                "exit_code": code,
                "reports": [io.report_to_dict(r) for r in self.reports],
                "skipped": self.skipped,
            }
            doc.update(self.extra)
            json.dump(doc, self.stream, indent=2)
            self.stream.write("\n")
            return
        w = self.stream.write
        w(f"# {self.command}\n")
        for r in self.reports:
            w(r.summary() + "\n")
            for note in r.notes:
                w(f"  note: {note}\n")
            for wit in r.witnesses:
                args = ", ".join(str(a) for a in wit.args)
                label = f" [{wit.label}]" if wit.label else ""
                w(f"  witness ({args}){label}: residual {wit.residual}\n")
        for s in self.skipped:
            w(f"SKIP {s['check_name']}: {s['reason']}\n")
        for key, value in self.extra.items():
            w(f"{key}: {value}\n")
        w(f"result: {'PASS' if code == EXIT_OK else 'FAIL'}\n")


def _emit_error(out: _Output, message: str) -> int:
    if out.fmt == "json":
        json.dump({"command": out.command, "error": message, "exit_code": EXIT_INPUT}, out.stream, indent=2)
        out.stream.write("\n")
    else:
        out.stream.write(f"# {out.command}\nerror: {message}\n")
    return EXIT_INPUT


def _load(args):
    A = io.load_algebra(args.algebra, args.strict_torsion)
    P = None
    if getattr(args, "operator", None):
        P = io.load_operator(args.operator, A, args.strict_torsion)
    return A, P


def _validated(out: _Output, A, P) -> bool:
    report = rota_baxter.validate_operator(A, P)
    out.add(report)
    return report.passed


def _dispatch(args, out: _Output) -> int:
    cmd = args.command
    if cmd == "list-fixtures":
        out.extra["fixtures"] = io.fixture_names()
        return EXIT_OK
    if cmd == "solve-scalar":
        sol = cohomology.solve_scalar(io.parse_rational(args.weight, "--weight"), args.kind)
        d = io.solution_to_dict(sol)
        out.extra.update(d)
        return EXIT_OK

    A, P = _load(args)
    if cmd == "check-axioms":
        for r in axioms.check_all(A, unital=args.unital):
            out.add(r)
        return EXIT_OK if out.passed else EXIT_FAIL

    if not _validated(out, A, P):
        return EXIT_INPUT
    if cmd == "check-rb":
        out.add(rota_baxter.check_rb(A, P))
    elif cmd == "check-homomorphism":
        out.add(rota_baxter.check_homomorphism(A, P))
    elif cmd == "deform":
        deformed = rota_baxter.deform(A, P)
        io.write_algebra(deformed, args.out)
        out.extra["written"] = args.out
    elif cmd == "check-cocycle":
        out.add(cohomology.check_cocycle(A, P, cohomology.build_phi(A, P)))
    elif cmd == "check-coboundary":
        if args.psi:
            psi = Cochain1.from_map(io.load_operator(args.psi, A, args.strict_torsion))
            report = rota_baxter.validate_map(A, psi, "psi_validation")
            out.add(report)
            if not report.passed:
                return EXIT_INPUT
        else:
            psi = Cochain1.from_map(P)
            out.add(cohomology.check_dagger(A, P))
            try:
                out.add(cohomology.check_deltaP_identity(A, P))
            except HypothesisNotMetError as exc:
                out.skip("deltaP_identity", f"hypothesis not met: {exc}")
        out.add(cohomology.check_coboundary_eq(A, P, psi))
    return EXIT_OK if out.passed else EXIT_FAIL


def run_command(argv: Optional[List[str]] = None, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Output(" ".join(argv), args.format, stream)
    try:
        code = _dispatch(args, out)
    except (
        io.ParseError,
        io.ValidationError,
        AlgebraValidationError,
        UnknownGeneratorError,
        OperatorValidationError,
        NoVacuumError,
    ) as exc:
        return _emit_error(out, str(exc))
    out.emit(code)
    return code


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
