"""Weighted geometric means: the closed-form log-Euclidean solution."""

import logging

import numpy as np
from numpy.typing import ArrayLike

from src.errors import DomainError
from src.models import ClassicalSolution, DecisionProblem, Method, Normalization, RatingVector
from src.pairwise import rank_alternatives
from src.utils.concurrency import map_ordered

logger = logging.getLogger(__name__)


def geometric_mean_vector(a: ArrayLike) -> RatingVector:
    """Row geometric means ``x_i = (Π_j a_ij)^(1/n)``, unnormalized."""
    a = np.asarray(a, dtype=float)
    return RatingVector.from_values(np.exp(np.log(a).mean(axis=1)), Normalization.RAW)


def wgm_solve(
    problem: DecisionProblem,
    tie_tol: float | None = None,
    scale: float = 1.0,
) -> ClassicalSolution:
    """
    WGM ratings ``x_i = Π_k (Π_j a_ij^(k))^(w_k/n) · u`` with ``u = scale``.

    Criterion weights w are the sum-normalized row geometric means of C.
    """
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}")

    logger.info("--- WGM: criteria geometric means ---")
    weights = geometric_mean_vector(problem.criteria.entries).to(Normalization.SUM)

    logger.info("--- WGM: %d alternative geometric means ---", problem.m)
    vectors = map_ordered(geometric_mean_vector, [a.entries for a in problem.alternatives])

    # Product of powers, accumulated in the log domain
    log_x = sum(wk * np.log(x.values) for wk, x in zip(weights.values, vectors))
    raw = RatingVector.from_values(np.exp(log_x) * scale, Normalization.RAW)
    ratings = raw.to(Normalization.SUM)
    logger.debug("WGM raw ratings: %s", np.round(raw.values, 6).tolist())

    return ClassicalSolution(
        method=Method.WGM,
        criterion_weights=weights,
        per_criterion_vectors=tuple(vectors),
        ratings=ratings,
        ranking=rank_alternatives(ratings.values, tie_tol),
    )
