"""lcarank CLI entry point."""

import argparse
import logging
import sys
from pathlib import Path

from src.config import settings, setup_logging
from src.errors import EXIT_OK, exit_code_for
from src.models import Method
from src.pipeline import SINGLE_METHODS, check_problem, solve_matrix, solve_problem
from src.utils.problem_io import load_matrix, load_problem
from src.utils.report import render_csv, render_json, render_single_text, render_text

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "csv")


def _nonnegative_float(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return x


def _resolve(path: str) -> Path:
    """Use ``path`` as given, falling back to the bundled problems directory."""
    candidate = Path(path)
    if not candidate.exists() and not candidate.is_absolute():
        bundled = settings.problems_dir / candidate
        if bundled.exists():
            return bundled
    return candidate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcarank",
        description="lcarank: ratings of alternatives from pairwise comparisons "
        "(log-Chebyshev approximation, AHP, weighted geometric means)",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log pipeline steps to stderr (DEBUG level)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check structure and reciprocity of a problem")
    validate.add_argument("file", help="Problem document (JSON or YAML)")

    solve = commands.add_parser("solve", help="Rate alternatives of a multicriteria problem")
    solve.add_argument("file", help="Problem document (JSON or YAML)")
    solve.add_argument(
        "--method", choices=[m.value for m in Method] + ["all"], default="all",
        help="Method to run (default: all)",
    )
    solve.add_argument(
        "--count-worst", action="store_true",
        help="Let the LCA worst ratings vote in the comparison plurality",
    )

    single = commands.add_parser("single", help="Rate alternatives of one comparison matrix")
    single.add_argument("file", help="Matrix document with a 'matrix' key")
    single.add_argument("--method", choices=SINGLE_METHODS, default="lca", help="Method (default: lca)")

    for sub in (solve, single):
        sub.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
        sub.add_argument(
            "--tie-tol", type=_nonnegative_float, default=None,
            help=f"Relative tolerance for ranking ties (default: {settings.tie_tol:g})",
        )
        sub.add_argument(
            "--precision", type=int, choices=range(0, 13), default=None, metavar="DIGITS",
            help=f"Decimals in text and csv output, 0-12 (default: {settings.precision})",
        )
    return parser


def _validate(args: argparse.Namespace) -> str:
    problem = load_problem(_resolve(args.file))
    lines = [f"OK: {problem.m} criteria x {problem.n} alternatives, all matrices reciprocal"]
    checks = check_problem(problem)
    width = max(len(c.name) for c in checks)
    for c in checks:
        state = "consistent" if c.consistent else "inconsistent"
        lines.append(
            f"  {c.name:<{width}}  {c.size}x{c.size}  "
            f"spectral radius {c.spectral_radius:.{settings.precision}f}  {state}"
        )
    return "\n".join(lines) + "\n"


def _solve(args: argparse.Namespace) -> str:
    problem = load_problem(_resolve(args.file))
    methods = tuple(Method) if args.method == "all" else (Method(args.method),)
    result = solve_problem(problem, methods, tie_tol=args.tie_tol, count_worst=args.count_worst)
    if args.format == "json":
        return render_json(result.report)
    if args.format == "csv":
        return render_csv(result.report, args.precision)
    return render_text(result.report, args.precision, count_worst=args.count_worst)


def _single(args: argparse.Namespace) -> str:
    matrix = load_matrix(_resolve(args.file))
    document = solve_matrix(matrix, args.method, tie_tol=args.tie_tol)
    if args.format == "json":
        return render_json(document)
    if args.format == "csv":
        return render_csv(document, args.precision)
    return render_single_text(document, args.precision)


COMMANDS = {"validate": _validate, "solve": _solve, "single": _single}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging("DEBUG" if args.verbose else None)

    try:
        output = COMMANDS[args.command](args)
    except Exception as e:
        code = exit_code_for(e)
        if code is None:
            raise
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return code

    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
