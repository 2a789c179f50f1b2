"""Analytic hierarchy process: principal eigenvectors aggregated by a weighted sum."""

import logging

import numpy as np
from numpy.typing import ArrayLike

from src.config import settings
from src.errors import ConvergenceError
from src.models import ClassicalSolution, DecisionProblem, Method, Normalization, RatingVector
from src.pairwise import rank_alternatives
from src.utils.concurrency import map_ordered

logger = logging.getLogger(__name__)


def principal_eigenvector(
    a: ArrayLike,
    tol: float | None = None,
    max_iter: int | None = None,
) -> tuple[RatingVector, float]:
    """
    Perron eigenpair of a positive matrix by power iteration.

    Starts from the uniform vector and renormalizes by the sum each step;
    stops once successive iterates differ by less than ``tol`` in max-norm.

    Returns:
        (sum-normalized eigenvector, eigenvalue λ_max).

    Raises:
        ConvergenceError: ``max_iter`` steps without meeting ``tol``.
    """
    tol = settings.eigen_tol if tol is None else tol
    max_iter = settings.eigen_max_iter if max_iter is None else max_iter
    a = np.asarray(a, dtype=float)
    n = a.shape[0]

    v = np.full(n, 1.0 / n)
    delta = np.inf
    for iteration in range(1, max_iter + 1):
        w = a @ v
        w /= w.sum()
        delta = float(np.max(np.abs(w - v)))
        v = w
        if delta < tol:
            break
    else:
        raise ConvergenceError(max_iter, delta)

    # v sums to 1, so the eigenvalue is the sum of A v
    eigenvalue = float((a @ v).sum())
    logger.debug("Power iteration converged in %d steps, lambda_max=%.10g", iteration, eigenvalue)
    return RatingVector.from_values(v, Normalization.SUM), eigenvalue


def ahp_solve(problem: DecisionProblem, tie_tol: float | None = None) -> ClassicalSolution:
    """
    AHP ratings ``x = Σ_k w_k x_k`` where w and every x_k are sum-normalized
    principal eigenvectors of C and A_k.
    """
    logger.info("--- AHP: criteria eigenvector ---")
    weights, criteria_eigenvalue = principal_eigenvector(problem.criteria.entries)

    logger.info("--- AHP: %d alternative eigenvectors ---", problem.m)
    results = map_ordered(principal_eigenvector, [a.entries for a in problem.alternatives])
    vectors = [vec for vec, _ in results]

    combined = sum(wk * x.values for wk, x in zip(weights.values, vectors))
    ratings = RatingVector.from_values(combined, Normalization.SUM)

    return ClassicalSolution(
        method=Method.AHP,
        criterion_weights=weights,
        per_criterion_vectors=tuple(vectors),
        ratings=ratings,
        principal_eigenvalues=tuple(value for _, value in results),
        criteria_eigenvalue=criteria_eigenvalue,
        ranking=rank_alternatives(ratings.values, tie_tol),
    )
