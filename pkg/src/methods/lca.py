"""Log-Chebyshev approximation (LCA) of pairwise comparison matrices in max-algebra.

The single-criterion problem ``min_{x>0} x^- A x`` has optimal value
``λ = spectral_radius(A)`` and solution set ``{B ⊗ u : u > 0}`` with
``B = (λ^-1 A)*``. From B we extract the best differentiating solutions
(largest max/min ratio, componentwise minimal) and the unique worst one.
"""

import logging
from collections.abc import Sequence
from functools import reduce

import numpy as np
from numpy.typing import ArrayLike

from src.config import settings
from src.errors import DomainError, ShapeError
from src.models import (
    BestBranch,
    DecisionProblem,
    DifferentiatingResult,
    GeneratingMatrix,
    LcaSolution,
    Normalization,
    RatingVector,
)
from src.pairwise import rank_alternatives
from src.tropical import (
    as_tropical,
    conj_transpose,
    hilbert_seminorm,
    kleene_star,
    matrix_conj_transpose,
    scalar_mul,
    spectral_radius,
    trop_add,
    trop_mul,
    trop_norm,
)

logger = logging.getLogger(__name__)


def lc_objective(a: ArrayLike, x: ArrayLike) -> float:
    """``x^- ⊗ A ⊗ x = max_ij a_ij x_j / x_i`` (1 + max relative error for reciprocal A)."""
    a = as_tropical(a, ndim=2)
    x = as_tropical(x, ndim=1)
    if a.shape != (x.size, x.size):
        raise ShapeError(f"matrix of shape {a.shape} does not match a vector of length {x.size}")
    if np.any(x == 0):
        raise DomainError("objective needs a strictly positive vector")
    return trop_mul(conj_transpose(x), trop_mul(a, x))


def max_relative_error(a: ArrayLike, x: ArrayLike) -> float:
    """``max_ij |a_ij - x_i/x_j| / a_ij``; equals ``lc_objective - 1`` for reciprocal A."""
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float).reshape(-1)
    if a.shape != (x.size, x.size):
        raise ShapeError(f"matrix of shape {a.shape} does not match a vector of length {x.size}")
    return float(np.max(np.abs(a - x[:, None] / x[None, :]) / a))


def solve_single(a: ArrayLike) -> GeneratingMatrix:
    """
    Solve ``min_{x>0} x^- A x`` for any positive square matrix.

    Reciprocity is not required: the weighted maxima P and R of the
    multicriteria procedure are not reciprocal.

    Returns:
        GeneratingMatrix with radius λ and generator ``B = (λ^-1 A)*``.
    """
    a = as_tropical(a, ndim=2)
    radius = spectral_radius(a)
    if radius <= 0:
        raise DomainError("log-Chebyshev solution needs a matrix with positive spectral radius")

    generator = kleene_star(scalar_mul(1.0 / radius, a))
    best_bound = trop_norm(trop_mul(generator, matrix_conj_transpose(generator)))
    worst_bound = trop_norm(generator)
    logger.debug(
        "Solved %dx%d: radius=%.10g best_bound=%.10g worst_bound=%.10g",
        a.shape[0], a.shape[1], radius, best_bound, worst_bound,
    )
    return GeneratingMatrix(
        source=a,
        generator=generator,
        radius=radius,
        best_bound=best_bound,
        worst_bound=worst_bound,
    )


def _dominates(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    # u <= v everywhere and strictly smaller somewhere
    return bool(np.all(u <= v + tol) and np.any(u < v - tol))


def _best_selection(
    g: GeneratingMatrix, tol: float
) -> tuple[list[int], list[np.ndarray], float]:
    b = g.generator
    spans = [
        trop_norm(b[:, j]) * trop_norm(conj_transpose(b[:, j])) for j in range(g.n)
    ]
    top = max(spans)
    argmax = [j for j, s in enumerate(spans) if s >= top * (1.0 - tol)]

    # Normalize, then drop duplicate columns (first index wins)
    columns: list[int] = []
    vectors: list[np.ndarray] = []
    for j in argmax:
        v = b[:, j] / trop_norm(b[:, j])
        if any(np.max(np.abs(v - kept)) <= tol for kept in vectors):
            continue
        columns.append(j)
        vectors.append(v)

    minimal = [
        k for k, v in enumerate(vectors)
        if not any(_dominates(u, v, tol) for u in vectors)
    ]
    logger.debug(
        "Best selection: argmax columns %s, distinct %s, minimal %s",
        argmax, columns, [columns[k] for k in minimal],
    )
    return [columns[k] for k in minimal], [vectors[k] for k in minimal], top


def best_differentiating(
    g: GeneratingMatrix, tol: float | None = None
) -> tuple[list[RatingVector], float]:
    """
    Best differentiating solutions: normalized columns ``b_k / ‖b_k‖`` maximizing
    ``‖b_k‖ ‖b_k^-‖``, reduced to the componentwise minimal ones.

    Returns:
        (vectors ordered by column index, their common Hilbert seminorm).
    """
    tol = settings.selection_tol if tol is None else tol
    _, vectors, seminorm = _best_selection(g, tol)
    return [RatingVector.from_values(v, Normalization.MAX) for v in vectors], seminorm


def worst_differentiating(g: GeneratingMatrix) -> RatingVector:
    """Unique worst differentiating solution ``(1^T B)^-``: entry j is ``1 / max_i b_ij``."""
    y, _ = _worst_vector(g)
    return RatingVector.from_values(y, Normalization.MAX)


def _worst_vector(g: GeneratingMatrix) -> tuple[np.ndarray, float]:
    ones = np.ones(g.n)
    y = conj_transpose(trop_mul(ones, g.generator))
    raw_max = trop_norm(y)
    if abs(raw_max - 1.0) > settings.normalization_tol:
        logger.warning(
            "Worst differentiating vector has max entry %.12g, rescaling to 1", raw_max
        )
    return y, raw_max


def differentiate(g: GeneratingMatrix, tol: float | None = None) -> DifferentiatingResult:
    """Best and worst differentiating solutions of one generating matrix."""
    tol = settings.selection_tol if tol is None else tol
    columns, vectors, best_seminorm = _best_selection(g, tol)
    y, raw_max = _worst_vector(g)
    worst = RatingVector.from_values(y, Normalization.MAX)
    return DifferentiatingResult(
        best=tuple(RatingVector.from_values(v, Normalization.MAX) for v in vectors),
        best_columns=tuple(columns),
        worst=worst,
        best_seminorm=best_seminorm,
        worst_seminorm=hilbert_seminorm(worst.values),
        worst_raw_max=raw_max,
        tie_flag=len(vectors) > 1,
    )


def weighted_maximum(matrices: Sequence[ArrayLike], weights: ArrayLike) -> np.ndarray:
    """Weighted tropical sum ``⊕_k w_k A_k``."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    if len(matrices) != w.size:
        raise ShapeError(f"{len(matrices)} matrices but {w.size} weights")
    return reduce(trop_add, (scalar_mul(wk, a) for wk, a in zip(w, matrices)))


def lca_solve(
    problem: DecisionProblem,
    tie_tol: float | None = None,
    tol: float | None = None,
) -> LcaSolution:
    """
    Execute the multicriteria LCA procedure:
        C -> D, λ -> w (best), v (worst)
        w -> P -> Q, μ -> best ratings x
        v -> R -> S, ν -> worst ratings y

    Every minimal best weight vector gets its own ratings branch; the first
    (lowest column index of D) is the headline result.
    """
    alternatives = [a.entries for a in problem.alternatives]

    # Step 1: weights of criteria
    logger.info("--- Step 1.1: generating matrix D ---")
    d = solve_single(problem.criteria.entries)
    logger.info("--- Step 1.2-1.3: best and worst weights ---")
    weights = differentiate(d, tol=tol)
    if weights.tie_flag:
        logger.warning(
            "%d minimal best weight vectors (columns %s); solving each",
            len(weights.best), [j + 1 for j in weights.best_columns],
        )

    # Step 2: best ratings, one branch per best weight vector
    branches = []
    for w in weights.best:
        logger.info("--- Step 2: best ratings ---")
        p = weighted_maximum(alternatives, w.values)
        q = solve_single(p)
        ratings, _ = best_differentiating(q, tol=tol)
        branches.append(
            BestBranch(
                weights=w,
                weighted_matrix=p,
                generator=q,
                ratings=tuple(ratings),
                rankings=tuple(rank_alternatives(x.values, tie_tol) for x in ratings),
            )
        )

    # Step 3: worst ratings
    logger.info("--- Step 3: worst ratings ---")
    r = weighted_maximum(alternatives, weights.worst.values)
    s = solve_single(r)
    y, raw_max = _worst_vector(s)
    ratings_worst = RatingVector.from_values(y, Normalization.MAX)

    solution = LcaSolution(
        criteria_generator=d,
        weights=weights,
        branches=tuple(branches),
        worst_matrix=r,
        worst_generator=s,
        ratings_worst=ratings_worst,
        ranking_worst=rank_alternatives(ratings_worst.values, tie_tol),
        worst_raw_max=raw_max,
    )
    logger.info(
        "LCA done: lambda=%.4f mu=%.4f nu=%.4f", solution.lam, solution.mu, solution.nu
    )
    return solution
