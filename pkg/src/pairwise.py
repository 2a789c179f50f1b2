"""Pairwise comparison inputs: reciprocity, consistency and rankings."""

import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike

from src.config import settings
from src.errors import DomainError, ReciprocityError, ShapeError
from src.models import DecisionProblem, PairwiseComparisonMatrix, Ranking

logger = logging.getLogger(__name__)


def default_labels(prefix: str, count: int) -> tuple[str, ...]:
    """``C1..Cm`` for criteria, ``A1..An`` for alternatives."""
    return tuple(f"{prefix}{i}" for i in range(1, count + 1))


def validate_reciprocal(
    matrix: ArrayLike,
    tol: float | None = None,
    name: str | None = None,
    labels: Sequence[str] | None = None,
) -> PairwiseComparisonMatrix:
    """
    Check a square positive matrix for reciprocity and return it with a unit diagonal.

    Args:
        matrix: Square array of positive ratios.
        tol: Largest accepted ``|a_ij * a_ji - 1|`` (default: settings.reciprocity_tol).
        name: Used in error messages (e.g. ``criteria`` or a criterion label).
        labels: Optional name per row/column.

    Raises:
        ShapeError: not a non-empty square matrix, or label count mismatch.
        DomainError: an entry is zero, negative or non-finite (names the entry).
        ReciprocityError: the first entry (row-major) that violates reciprocity.
    """
    tol = settings.reciprocity_tol if tol is None else tol
    where = f"matrix '{name}'" if name else "matrix"

    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        raise ShapeError(f"{where} must be square and non-empty, got shape {a.shape}")
    if labels is not None and len(labels) != a.shape[0]:
        raise ShapeError(f"{where} has {a.shape[0]} rows but {len(labels)} labels")

    bad = ~np.isfinite(a) | (a <= 0)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise DomainError(
            f"{where} entry ({i + 1},{j + 1}) must be positive and finite, got {a[i, j]:g}"
        )

    product = a * a.T
    violations = np.abs(product - 1.0) > tol
    if violations.any():
        i, j = np.argwhere(violations)[0]
        raise ReciprocityError(int(i) + 1, int(j) + 1, float(product[i, j]), name)

    np.fill_diagonal(a, 1.0)
    logger.debug("Validated %s (%dx%d)", where, a.shape[0], a.shape[1])
    return PairwiseComparisonMatrix(
        entries=a,
        labels=tuple(labels) if labels is not None else None,
        name=name,
    )


def consistent_from_vector(
    x: ArrayLike,
    labels: Sequence[str] | None = None,
    name: str | None = None,
) -> PairwiseComparisonMatrix:
    """Rank-one consistent matrix ``X = (x_i / x_j)`` generated by a positive vector."""
    v = np.array(x, dtype=float).reshape(-1)
    if v.size == 0 or not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise DomainError("a consistent matrix needs a strictly positive vector")
    return PairwiseComparisonMatrix(
        entries=v[:, None] / v[None, :],
        labels=tuple(labels) if labels is not None else None,
        name=name,
    )


def is_consistent(matrix: ArrayLike, tol: float | None = None) -> bool:
    """True iff ``|a_ij - a_ik a_kj| <= tol * a_ij`` for every triple."""
    tol = settings.consistency_tol if tol is None else tol
    a = np.asarray(matrix, dtype=float)
    # paths[i, k, j] = a_ik * a_kj
    paths = a[:, :, None] * a[None, :, :]
    direct = a[:, None, :]
    return bool(np.all(np.abs(direct - paths) <= tol * direct))


def rank_alternatives(x: ArrayLike, tie_tol: float | None = None) -> Ranking:
    """
    Order indices by descending rating; ratings within ``tie_tol`` (relative to
    the class leader) share an equivalence class, listed in index order.
    """
    tie_tol = settings.tie_tol if tie_tol is None else tie_tol
    values = np.asarray(x, dtype=float).reshape(-1)
    if values.size == 0 or np.any(values <= 0):
        raise DomainError("rankings need strictly positive ratings")

    order = sorted(range(values.size), key=lambda i: (-values[i], i))
    classes: list[list[int]] = []
    leader = 0.0
    for i in order:
        if classes and leader - values[i] <= tie_tol * leader:
            classes[-1].append(i)
        else:
            classes.append([i])
            leader = values[i]
    return Ranking(classes=tuple(tuple(sorted(group)) for group in classes))


def build_problem(
    criteria: ArrayLike,
    alternatives: Sequence[ArrayLike],
    criterion_labels: Sequence[str] | None = None,
    alternative_labels: Sequence[str] | None = None,
    tol: float | None = None,
) -> DecisionProblem:
    """
    Validate all matrices of a two-level problem and assemble a DecisionProblem.

    Raises:
        ShapeError: wrong number of alternative matrices, differing sizes, or
            label counts that do not match.
        DomainError, ReciprocityError: propagated from validate_reciprocal.
    """
    c = validate_reciprocal(criteria, tol=tol, name="criteria", labels=criterion_labels)
    m = c.n
    if len(alternatives) != m:
        raise ShapeError(
            f"criteria matrix is {m}x{m} but {len(alternatives)} alternative matrices were given"
        )
    criterion_labels = tuple(criterion_labels) if criterion_labels else default_labels("C", m)

    first = np.asarray(alternatives[0], dtype=float)
    n = first.shape[0] if first.ndim == 2 else 0
    if alternative_labels is not None and len(alternative_labels) != n:
        raise ShapeError(f"{n} alternatives compared but {len(alternative_labels)} labels given")
    alternative_labels = (
        tuple(alternative_labels) if alternative_labels else default_labels("A", n)
    )

    matrices = []
    for label, grid in zip(criterion_labels, alternatives):
        shape = np.shape(grid)
        if shape != (n, n):
            raise ShapeError(f"matrix '{label}' has shape {shape}, expected ({n}, {n})")
        matrices.append(
            validate_reciprocal(grid, tol=tol, name=label, labels=alternative_labels)
        )

    logger.info("Problem: %d criteria x %d alternatives", m, n)
    return DecisionProblem(
        criteria=c,
        alternatives=tuple(matrices),
        criterion_labels=criterion_labels,
        alternative_labels=alternative_labels,
    )
