"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
3 invariant violation, 4 closed form disagrees with bisection,
5 closed form requested for a kind without one, 6 unwritable output.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

from . import statefile
from .entanglement import concurrence, concurrence_pure
from .errors import MixentError, OmegaMismatch
from .omega import (
    AGREEMENT_TOL,
    DEFAULT_TOL,
    OmegaResult,
    omega_c_bisect,
    omega_c_pure,
    omega_c_rank2,
    omega_c_rank4,
    sweep,
)
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    StructuredRank2,
    StructuredRank4,
    density_of_ensemble,
    density_of_pure,
    structured_rank2_density,
    structured_rank4_density,
)
from .verify import format_report, run_suites

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_DISAGREE = 4
EXIT_NO_CLOSED = 5
EXIT_OUTPUT = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fixed(x: float) -> str:
    s = f"{x:.12f}"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _sig(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def density_of(value) -> DensityMatrix:
    if isinstance(value, DensityMatrix):
        return value
    if isinstance(value, PureState):
        return density_of_pure(value)
    if isinstance(value, Ensemble):
        return density_of_ensemble(value)
    if isinstance(value, StructuredRank2):
        return structured_rank2_density(value, 0.0)
    if isinstance(value, StructuredRank4):
        return structured_rank4_density(value, 0.0)
    raise TypeError(type(value).__name__)


def _load(path: str):
    try:
        return statefile.load(path)
    except statefile.StateFileError as exc:
        raise CliError(EXIT_PARSE, f"parse error in {path}: {exc}") from None
    except MixentError as exc:
        raise CliError(EXIT_INVARIANT, f"invalid state in {path}: {type(exc).__name__}: {exc}") from None


def cmd_concurrence(state: str) -> str:
    rho = density_of(_load(state))
    cv = concurrence(rho)
    return f"C = {_fixed(cv.value)}\nlambda = {' '.join(_fixed(x) for x in cv.lambdas)}\n"


def _closed(value) -> OmegaResult | None:
    if isinstance(value, PureState):
        return omega_c_pure(min(1.0, concurrence_pure(value)))
    if isinstance(value, StructuredRank2):
        return omega_c_rank2(value)
    if isinstance(value, StructuredRank4):
        return omega_c_rank4(value, verify=False)
    return None


def cmd_omega_c(state: str, method: str = "auto", tol: float = DEFAULT_TOL) -> str:
    value = _load(state)
    rho = density_of(value)
    lines = []
    if method == "bisect":
        result = omega_c_bisect(rho, tol)
    else:
        result = _closed(value)
        if result is None:
            if method == "closed":
                raise CliError(EXIT_NO_CLOSED, f"no closed form for kind {statefile.to_document(value)['kind']!r}")
            result = omega_c_bisect(rho, tol)
        elif method == "auto":
            ref = omega_c_bisect(rho, tol).omega_c
            if abs(ref - result.omega_c) > AGREEMENT_TOL:
                raise CliError(
                    EXIT_DISAGREE,
                    f"{result.method.value} gives {_fixed(result.omega_c)} but bisection gives {_fixed(ref)}",
                )
            lines.append(f"cross_check = bisection agrees within {AGREEMENT_TOL:.0e}")
    tags = result.method.value + (f", {result.branch.value}" if result.branch else "")
    head = [f"omega_c = {_fixed(result.omega_c)} ({tags})", f"residual = {result.residual:.3e}"]
    return "\n".join(head + lines) + "\n"


def sweep_csv(rho: DensityMatrix, start: float, stop: float, steps: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["omega", "concurrence", "separable"])
    for row in sweep(rho, start, stop, steps):
        w.writerow([_sig(row.omega), _sig(row.concurrence), "true" if row.separable else "false"])
    return buf.getvalue()


def cmd_sweep(state: str, start: float, stop: float, steps: int, out: str) -> str:
    text = sweep_csv(density_of(_load(state)), start, stop, steps)
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot write {out}: {exc.strerror}") from None
    return ""


def cmd_verify(trials: int, seed: int) -> tuple[str, int]:
    reports = run_suites(trials, seed)
    text = format_report(reports, trials, seed)
    failed = next((r for r in reports if not r.ok), None)
    if failed is None:
        return text, EXIT_OK
    text += f"first failure in {failed.name} (deviation {failed.failure.deviation:.3e}):\n"
    text += statefile.dumps(failed.failure.state) + "\n"
    return text, EXIT_VERIFY


def _positive_int(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixent", description="Two-qubit mixing-weight entanglement toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concurrence", help="Wootters concurrence of a state file")
    p.add_argument("--state", required=True)

    p = sub.add_parser("omega-c", help="critical mixing weight of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--method", choices=("auto", "closed", "bisect"), default="auto")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("sweep", help="tabulate concurrence along the mixing path as CSV")
    p.add_argument("--state", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the randomised cross-validation suites")
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "concurrence":
            sys.stdout.write(cmd_concurrence(args.state))
        elif args.command == "omega-c":
            sys.stdout.write(cmd_omega_c(args.state, args.method, args.tol))
        elif args.command == "sweep":
            cmd_sweep(args.state, args.start, args.stop, args.steps, args.out)
        else:
            text, code = cmd_verify(args.trials, args.seed)
            sys.stdout.write(text)
            return code
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OmegaMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except MixentError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
