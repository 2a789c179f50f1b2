"""Main orchestrator: runs the selected methods on a problem and assembles the report."""

import logging
import time
from collections.abc import Sequence

from src import __version__
from src.config import settings
from src.methods.ahp import ahp_solve, principal_eigenvector
from src.methods.lca import differentiate, lc_objective, lca_solve, solve_single
from src.methods.wgm import geometric_mean_vector, wgm_solve
from src.models import (
    DecisionProblem,
    Diagnostics,
    MatrixCheck,
    Method,
    PairwiseComparisonMatrix,
    SingleReportDocument,
    SolveResult,
)
from src.pairwise import is_consistent, rank_alternatives
from src.tropical import spectral_radius
from src.utils.report import (
    TOOL_NAME,
    alternate_optimum,
    build_document,
    classical_report,
    lca_reports,
    method_report,
)

logger = logging.getLogger(__name__)

SINGLE_METHODS = ("lca", "eig", "gmean")


def solve_problem(
    problem: DecisionProblem,
    methods: Sequence[Method] = tuple(Method),
    tie_tol: float | None = None,
    count_worst: bool = False,
) -> SolveResult:
    """
    Execute the selected methods in the order LCA, AHP, WGM:
        LCA: C -> D -> (w, v) -> (P, R) -> (Q, S) -> (x, y)
        AHP: eigenvectors of C and every A_k -> weighted sum
        WGM: geometric means of C and every A_k -> weighted product

    Args:
        problem: Validated DecisionProblem.
        methods: Methods to run (default: all three).
        tie_tol: Relative tolerance for ranking ties (default: from settings).
        count_worst: Let LCA-worst vote in the comparison plurality.

    Returns:
        SolveResult with the report document and the in-process solutions.
    """
    start_time = time.time()
    tie_tol = settings.tie_tol if tie_tol is None else tie_tol
    logger.info(
        "=== Solve started === %d criteria x %d alternatives, methods: %s",
        problem.m, problem.n, ", ".join(m.value for m in methods),
    )

    lca = ahp = wgm = None
    reports = []
    if Method.LCA in methods:
        lca = lca_solve(problem, tie_tol=tie_tol)
        reports.extend(lca_reports(lca, problem))
    if Method.AHP in methods:
        ahp = ahp_solve(problem, tie_tol=tie_tol)
        reports.append(classical_report(ahp, problem))
    if Method.WGM in methods:
        wgm = wgm_solve(problem, tie_tol=tie_tol)
        reports.append(classical_report(wgm, problem))

    document = build_document(problem, reports, tie_tol=tie_tol, count_worst=count_worst)
    logger.info("=== Solve completed === %d reports, %.3fs", len(reports), time.time() - start_time)
    return SolveResult(report=document, lca=lca, ahp=ahp, wgm=wgm)


def solve_matrix(
    matrix: PairwiseComparisonMatrix,
    method: str = "lca",
    tie_tol: float | None = None,
) -> SingleReportDocument:
    """
    Rate the alternatives of one comparison matrix.

    ``lca`` yields a best and a worst report; ``eig`` and ``gmean`` one each.
    Every report carries ``x^- A x - 1`` as its approximation error so the
    methods can be compared on the log-Chebyshev scale.
    """
    if method not in SINGLE_METHODS:
        raise ValueError(f"unknown method '{method}', expected one of {SINGLE_METHODS}")
    tie_tol = settings.tie_tol if tie_tol is None else tie_tol
    a = matrix.entries
    labels = matrix.labels or tuple(f"A{i}" for i in range(1, matrix.n + 1))
    logger.info("--- Single matrix %s (%dx%d): %s ---", matrix.name, matrix.n, matrix.n, method)

    if method == "lca":
        g = solve_single(a)
        result = differentiate(g)
        diagnostics = Diagnostics(lambda_=g.radius, approximation_error=g.radius - 1.0)
        reports = [
            method_report(
                "lca-best", labels, result.best[0],
                rank_alternatives(result.best[0].values, tie_tol), diagnostics,
                alternates=[
                    alternate_optimum(labels, x, rank_alternatives(x.values, tie_tol))
                    for x in result.best[1:]
                ],
                multiple_solutions=result.tie_flag,
            ),
            method_report(
                "lca-worst", labels, result.worst,
                rank_alternatives(result.worst.values, tie_tol), diagnostics,
            ),
        ]
    elif method == "eig":
        x, eigenvalue = principal_eigenvector(a)
        reports = [
            method_report(
                "eig", labels, x, rank_alternatives(x.values, tie_tol),
                Diagnostics(eigenvalues=[eigenvalue], approximation_error=lc_objective(a, x.values) - 1.0),
            )
        ]
    else:
        x = geometric_mean_vector(a)
        reports = [
            method_report(
                "gmean", labels, x, rank_alternatives(x.values, tie_tol),
                Diagnostics(approximation_error=lc_objective(a, x.values) - 1.0),
            )
        ]

    return SingleReportDocument(
        tool=TOOL_NAME,
        version=__version__,
        tie_tolerance=tie_tol,
        labels=list(labels),
        matrix=a.tolist(),
        methods=reports,
    )


def check_problem(problem: DecisionProblem) -> list[MatrixCheck]:
    """Consistency and spectral radius (1 iff consistent) of every matrix in the problem."""
    matrices = [problem.criteria, *problem.alternatives]
    checks = []
    for matrix in matrices:
        radius = spectral_radius(matrix.entries)
        checks.append(
            MatrixCheck(
                name=matrix.name or "matrix",
                size=matrix.n,
                consistent=is_consistent(matrix.entries),
                spectral_radius=radius,
            )
        )
        logger.debug("Checked %s: radius=%.10g", matrix.name, radius)
    return checks
