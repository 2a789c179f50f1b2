"""Build report documents from solutions and render them as text, json or csv."""

import csv
import io
import logging
from collections.abc import Sequence
from functools import lru_cache

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src import __version__
from src.config import settings
from src.errors import ShapeError
from src.models import (
    AlternateOptimum,
    BestBranch,
    ClassicalSolution,
    ComparisonSummary,
    DecisionProblem,
    Diagnostics,
    LcaSolution,
    Method,
    MethodReport,
    Normalization,
    ProblemEcho,
    Ranking,
    RatingsView,
    RatingVector,
    ReportDocument,
    SingleReportDocument,
)

logger = logging.getLogger(__name__)

TOOL_NAME = "lcarank"

CSV_HEADER = ("method", "alternative", "rating_max_norm", "rank")

_TITLES = {
    "lca-best": "LCA best differentiating",
    "lca-worst": "LCA worst differentiating",
    "ahp": "AHP weighted sum of eigenvectors",
    "wgm": "Weighted geometric means",
    "eig": "Principal eigenvector",
    "gmean": "Row geometric means",
}


# ── Building ──────────────────────────────────────────────────────────


def ratings_view(x: RatingVector) -> RatingsView:
    return RatingsView(
        sum_normalized=x.to(Normalization.SUM).values.tolist(),
        max_normalized=x.to(Normalization.MAX).values.tolist(),
    )


def method_report(
    method: str,
    labels: Sequence[str],
    ratings: RatingVector,
    ranking: Ranking,
    diagnostics: Diagnostics,
    weights: RatingVector | None = None,
    criteria: Sequence[str] = (),
    alternates: Sequence[AlternateOptimum] = (),
    multiple_solutions: bool = False,
) -> MethodReport:
    """One method's ratings, ranking and diagnostics over ``labels``."""
    return MethodReport(
        method=method,
        title=_TITLES[method],
        alternatives=list(labels),
        criteria=list(criteria),
        weights=weights.values.tolist() if weights is not None else [],
        weights_normalization=weights.normalization.value if weights is not None else None,
        ratings=ratings_view(ratings),
        alternates=list(alternates),
        ranking=ranking.labelled(labels),
        ranks=ranking.positions(),
        ranking_text=ranking.render(labels),
        tie=any(len(group) > 1 for group in ranking.classes),
        multiple_solutions=multiple_solutions,
        diagnostics=diagnostics,
    )


def alternate_optimum(
    labels: Sequence[str],
    ratings: RatingVector,
    ranking: Ranking,
    weights: RatingVector | None = None,
    mu: float | None = None,
) -> AlternateOptimum:
    return AlternateOptimum(
        ratings=ratings_view(ratings),
        ranking=ranking.labelled(labels),
        ranking_text=ranking.render(labels),
        weights=weights.values.tolist() if weights is not None else [],
        mu=mu,
    )


def _branch_alternates(branch: BestBranch, labels: Sequence[str], skip: int) -> list[AlternateOptimum]:
    return [
        alternate_optimum(labels, x, ranking, branch.weights, branch.generator.radius)
        for x, ranking in list(zip(branch.ratings, branch.rankings))[skip:]
    ]


def lca_reports(solution: LcaSolution, problem: DecisionProblem) -> list[MethodReport]:
    """
    ``lca-best`` and ``lca-worst``.

    The headline best branch fills the ``lca-best`` report. Its other optimal
    rating vectors, and every vector of the remaining branches, become
    alternates that carry their own weights and μ.
    """
    labels = problem.alternative_labels
    headline, *others = solution.branches
    alternates = _branch_alternates(headline, labels, skip=1)
    for branch in others:
        alternates.extend(_branch_alternates(branch, labels, skip=0))

    best = method_report(
        "lca-best",
        problem.alternative_labels,
        headline.ratings[0],
        headline.rankings[0],
        Diagnostics(lambda_=solution.lam, mu=solution.mu, approximation_error=solution.mu - 1.0),
        weights=solution.weights_best,
        criteria=problem.criterion_labels,
        alternates=alternates,
        multiple_solutions=bool(alternates) or solution.weights.tie_flag,
    )
    worst = method_report(
        "lca-worst",
        problem.alternative_labels,
        solution.ratings_worst,
        solution.ranking_worst,
        Diagnostics(lambda_=solution.lam, nu=solution.nu, approximation_error=solution.nu - 1.0),
        weights=solution.weights_worst,
        criteria=problem.criterion_labels,
    )
    return [best, worst]


def classical_report(solution: ClassicalSolution, problem: DecisionProblem) -> MethodReport:
    if solution.method is Method.AHP:
        diagnostics = Diagnostics(
            eigenvalues=list(solution.principal_eigenvalues),
            criteria_eigenvalue=solution.criteria_eigenvalue,
        )
    else:
        diagnostics = Diagnostics()
    return method_report(
        solution.method.value,
        problem.alternative_labels,
        solution.ratings,
        solution.ranking,
        diagnostics,
        weights=solution.criterion_weights,
        criteria=problem.criterion_labels,
    )


def problem_echo(problem: DecisionProblem) -> ProblemEcho:
    return ProblemEcho(
        criteria=list(problem.criterion_labels),
        alternatives=list(problem.alternative_labels),
        criteria_matrix=problem.criteria.entries.tolist(),
        alternative_matrices=[a.entries.tolist() for a in problem.alternatives],
    )


def compare(reports: Sequence[MethodReport], count_worst: bool = False) -> ComparisonSummary:
    """
    Count, per alternative, the methods that put it in their top class.

    ``lca-worst`` only votes when ``count_worst`` is set.

    Raises:
        ShapeError: fewer than two reports, or reports over different alternatives.
    """
    if len(reports) < 2:
        raise ShapeError(f"a comparison needs at least two method results, got {len(reports)}")
    labels = reports[0].alternatives
    for report in reports[1:]:
        if report.alternatives != labels:
            raise ShapeError(
                f"method '{report.method}' rates {report.alternatives}, expected {labels}"
            )

    counted = [r for r in reports if count_worst or r.method != "lca-worst"]
    votes = {label: 0 for label in labels}
    for report in counted:
        for label in report.ranking[0]:
            votes[label] += 1
    top = max(votes.values())
    return ComparisonSummary(
        counted=[r.method for r in counted],
        votes=votes,
        plurality=[label for label in labels if votes[label] == top],
    )


def build_document(
    problem: DecisionProblem,
    reports: list[MethodReport],
    tie_tol: float | None = None,
    count_worst: bool = False,
) -> ReportDocument:
    return ReportDocument(
        tool=TOOL_NAME,
        version=__version__,
        tie_tolerance=settings.tie_tol if tie_tol is None else tie_tol,
        problem=problem_echo(problem),
        methods=reports,
        comparison=compare(reports, count_worst) if len(reports) > 1 else None,
    )


# ── Rendering ─────────────────────────────────────────────────────────


@lru_cache(maxsize=1)
def _environment() -> Environment:
    return Environment(
        loader=FileSystemLoader(settings.templates_dir),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        undefined=StrictUndefined,
    )


def _render(template: str, **context) -> str:
    text = _environment().get_template(template).render(**context)
    return text.rstrip("\n") + "\n"


def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}f}"


def _fmt_all(values: Sequence[float], precision: int) -> str:
    return " ".join(_fmt(x, precision) for x in values)


def _alternate(alternate: AlternateOptimum, precision: int) -> dict:
    lines = []
    if alternate.weights:
        lines.append(f"{'weights (max)':<21}{_fmt_all(alternate.weights, precision)}")
    if alternate.mu is not None:
        lines.append(f"{'mu':<21}{_fmt(alternate.mu, precision)}")
        lines.append(f"{'approximation error':<21}{_fmt(alternate.mu - 1.0, precision)}")
    lines.append(f"ranking: {alternate.ranking_text}")
    return {"ratings": _fmt_all(alternate.ratings.max_normalized, precision), "lines": lines}


def _section(report: MethodReport, precision: int) -> dict:
    """Preformatted lines of one method section."""
    d = report.diagnostics
    diagnostics = [
        (name, _fmt(value, precision))
        for name, value in (
            ("lambda", d.lambda_),
            ("mu", d.mu),
            ("nu", d.nu),
            ("criteria eigenvalue", d.criteria_eigenvalue),
            ("approximation error", d.approximation_error),
        )
        if value is not None
    ]
    if d.eigenvalues:
        diagnostics.append(("eigenvalues", _fmt_all(d.eigenvalues, precision)))
    if report.weights:
        diagnostics.append(
            (f"weights ({report.weights_normalization})", _fmt_all(report.weights, precision))
        )

    width = max(len("alternative"), *(len(label) for label in report.alternatives))
    header = f"{'alternative':<{width}}{'max-norm':>10}{'sum-norm':>10}{'rank':>6}"
    rows = [
        f"{label:<{width}}{_fmt(mx, precision):>10}{_fmt(sm, precision):>10}{rank:>6}"
        for label, mx, sm, rank in zip(
            report.alternatives,
            report.ratings.max_normalized,
            report.ratings.sum_normalized,
            report.ranks,
        )
    ]
    return {
        "method": report.method,
        "title": report.title,
        "diagnostics": [f"{name:<21}{value}" for name, value in diagnostics],
        "header": header,
        "rows": rows,
        "ranking": report.ranking_text,
        "tie": report.tie,
        "alternates": [_alternate(a, precision) for a in report.alternates],
    }


def render_comparison(
    reports: Sequence[MethodReport],
    count_worst: bool = False,
    precision: int | None = None,
) -> str:
    """Side-by-side max-normalized ratings, every ranking and the plurality line."""
    precision = settings.precision if precision is None else precision
    summary = compare(reports, count_worst)

    labels = reports[0].alternatives
    width = max(len("alternative"), *(len(label) for label in labels))
    header = f"{'alternative':<{width}}" + "".join(f"{r.method:>11}" for r in reports)
    rows = [
        f"{label:<{width}}"
        + "".join(f"{_fmt(r.ratings.max_normalized[i], precision):>11}" for r in reports)
        for i, label in enumerate(labels)
    ]
    method_width = max(len(r.method) for r in reports)
    rankings = [f"{r.method:<{method_width}}  {r.ranking_text}" for r in reports]
    top = summary.votes[summary.plurality[0]]
    plurality = (
        f"plurality ({', '.join(summary.counted)}): "
        f"{', '.join(summary.plurality)} ({top} of {len(summary.counted)})"
    )
    return _render("comparison.txt.j2", header=header, rows=rows, rankings=rankings, plurality=plurality)


def render_text(
    document: ReportDocument,
    precision: int | None = None,
    count_worst: bool = False,
) -> str:
    """Human-readable report: input summary, one section per method, comparison table."""
    precision = settings.precision if precision is None else precision
    echo = document.problem
    text = _render(
        "report.txt.j2",
        tool=document.tool,
        version=document.version,
        headline=[
            f"Problem: {len(echo.criteria)} criteria x {len(echo.alternatives)} alternatives",
            f"Criteria: {', '.join(echo.criteria)}",
            f"Alternatives: {', '.join(echo.alternatives)}",
        ],
        sections=[_section(r, precision) for r in document.methods],
    )
    if len(document.methods) > 1:
        text += "\n" + render_comparison(document.methods, count_worst, precision)
    return text


def render_single_text(document: SingleReportDocument, precision: int | None = None) -> str:
    precision = settings.precision if precision is None else precision
    n = len(document.labels)
    return _render(
        "report.txt.j2",
        tool=document.tool,
        version=document.version,
        headline=[
            f"Matrix: {n} x {n}",
            f"Alternatives: {', '.join(document.labels)}",
        ],
        sections=[_section(r, precision) for r in document.methods],
    )


def render_json(document: ReportDocument | SingleReportDocument) -> str:
    return document.model_dump_json(indent=2, by_alias=True, exclude_none=True) + "\n"


def render_csv(
    document: ReportDocument | SingleReportDocument, precision: int | None = None
) -> str:
    """One row per alternative per method: ``method,alternative,rating_max_norm,rank``."""
    precision = settings.precision if precision is None else precision
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in document.methods:
        for label, rating, rank in zip(
            report.alternatives, report.ratings.max_normalized, report.ranks
        ):
            writer.writerow((report.method, label, _fmt(rating, precision), rank))
    return buffer.getvalue()
