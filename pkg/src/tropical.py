"""Dense max-times algebra over nonnegative reals.

Addition is ``x ⊕ y = max(x, y)`` and multiplication is the ordinary product,
so 0 is the additive and 1 the multiplicative neutral element. Matrices and
vectors are numpy float arrays; every function returns a new read-only array
and never mutates its arguments. One-dimensional arrays are vectors: a vector
on the right of ``trop_mul`` is a column, a vector on the left is a row.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.config import settings
from src.errors import DomainError, ShapeError, StarDivergenceError

logger = logging.getLogger(__name__)

TropicalMatrix = NDArray[np.float64]
TropicalVector = NDArray[np.float64]


def _frozen(a: NDArray) -> NDArray:
    a.flags.writeable = False
    return a


def as_tropical(values: ArrayLike, ndim: int | None = None) -> NDArray:
    """Return a read-only float copy of ``values`` after checking it is a max-algebra operand.

    Raises:
        ShapeError: empty input, or not a vector/matrix (or not ``ndim``-dimensional).
        DomainError: a negative or non-finite entry.
    """
    a = np.array(values, dtype=float)
    if a.ndim not in (1, 2) or (ndim is not None and a.ndim != ndim):
        expected = {1: "a vector", 2: "a matrix"}.get(ndim, "a vector or matrix")
        raise ShapeError(f"expected {expected}, got an array of shape {a.shape}")
    if a.size == 0:
        raise ShapeError("empty operand")
    if not np.all(np.isfinite(a)):
        raise DomainError("entries must be finite")
    if np.any(a < 0):
        raise DomainError("entries must be nonnegative in max-algebra")
    return _frozen(a)


def _square(values: ArrayLike, operation: str) -> TropicalMatrix:
    a = as_tropical(values, ndim=2)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{operation} needs a square matrix, got shape {a.shape}")
    return a


def _mul(a: NDArray, b: NDArray) -> NDArray:
    # (a ⊗ b)_ij = max_k a_ik * b_kj for already validated 2-D operands
    return np.max(a[:, :, None] * b[None, :, :], axis=1)


def trop_identity(n: int) -> TropicalMatrix:
    """Identity matrix I: ones on the diagonal, zeros elsewhere."""
    if n < 1:
        raise ShapeError(f"dimension must be positive, got {n}")
    return _frozen(np.eye(n))


def trop_zeros(rows: int, cols: int) -> TropicalMatrix:
    """Zero matrix, the neutral element of ⊕."""
    if rows < 1 or cols < 1:
        raise ShapeError(f"dimensions must be positive, got {rows}x{cols}")
    return _frozen(np.zeros((rows, cols)))


def trop_add(a: ArrayLike, b: ArrayLike) -> NDArray:
    """Entrywise maximum of two operands of identical shape."""
    a = as_tropical(a)
    b = as_tropical(b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add shapes {a.shape} and {b.shape}")
    return _frozen(np.maximum(a, b))


def trop_mul(a: ArrayLike, b: ArrayLike) -> NDArray | float:
    """Max-times product ``a ⊗ b``.

    Matrix ⊗ matrix and matrix ⊗ column give arrays; row ⊗ matrix gives a
    row; row ⊗ column gives the scalar ``max_k a_k b_k``.
    """
    a = as_tropical(a)
    b = as_tropical(b)
    if a.shape[-1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    if a.ndim == 1 and b.ndim == 1:
        return float(np.max(a * b))
    lhs = a if a.ndim == 2 else a[None, :]
    rhs = b if b.ndim == 2 else b[:, None]
    product = _mul(lhs, rhs)
    if a.ndim == 1:
        product = product[0]
    elif b.ndim == 1:
        product = product[:, 0]
    return _frozen(product)


def scalar_mul(s: float, a: ArrayLike) -> NDArray:
    """Multiply every entry by a nonnegative scalar."""
    if not np.isfinite(s) or s < 0:
        raise DomainError(f"scalar must be finite and nonnegative, got {s}")
    return _frozen(float(s) * as_tropical(a))


def conj_transpose(x: ArrayLike) -> TropicalVector:
    """Multiplicative conjugate of a vector: ``x_j -> 1/x_j``, zeros stay zero."""
    x = as_tropical(x, ndim=1)
    if not np.any(x):
        raise DomainError("conjugate of the zero vector is undefined")
    out = np.zeros_like(x)
    np.divide(1.0, x, out=out, where=x != 0)
    return _frozen(out)


def matrix_conj_transpose(a: ArrayLike) -> TropicalMatrix:
    """Multiplicative conjugate transpose: entry (i, j) is ``1/a_ji``, zeros stay zero."""
    a = as_tropical(a, ndim=2)
    if not np.any(a):
        raise DomainError("conjugate of the zero matrix is undefined")
    t = a.T
    out = np.zeros_like(t)
    np.divide(1.0, t, out=out, where=t != 0)
    return _frozen(out)


def trop_power(a: ArrayLike, p: int) -> TropicalMatrix:
    """``A^0 = I`` and ``A^p = A^(p-1) ⊗ A``."""
    a = _square(a, "trop_power")
    if p < 0:
        raise DomainError(f"power must be a nonnegative integer, got {p}")
    result = np.eye(a.shape[0])
    for _ in range(p):
        result = _mul(result, a)
    return _frozen(result)


def trop_trace(a: ArrayLike) -> float:
    """Tropical trace: the largest diagonal entry."""
    a = _square(a, "trop_trace")
    return float(np.max(np.diag(a)))


def spectral_radius(a: ArrayLike) -> float:
    """Spectral radius ``λ = ⊕_{k=1..n} tr(A^k)^(1/k)``, the maximum geometric cycle mean."""
    a = _square(a, "spectral_radius")
    n = a.shape[0]
    radius = 0.0
    power = a
    for k in range(1, n + 1):
        radius = max(radius, float(np.max(np.diag(power))) ** (1.0 / k))
        if k < n:
            power = _mul(power, a)
    return radius


def kleene_star(a: ArrayLike, tol: float | None = None) -> TropicalMatrix:
    """Kleene star ``A* = I ⊕ A ⊕ ... ⊕ A^(n-1)``.

    Defined when the spectral radius is at most 1; ``tol`` (default
    ``settings.star_tol``) absorbs the rounding of a caller that scaled the
    matrix by its own spectral radius.

    Raises:
        StarDivergenceError: spectral radius exceeds ``1 + tol``.
    """
    a = _square(a, "kleene_star")
    tol = settings.star_tol if tol is None else tol
    radius = spectral_radius(a)
    if radius > 1.0 + tol:
        raise StarDivergenceError(radius)

    n = a.shape[0]
    star = np.eye(n)
    power = np.eye(n)
    for _ in range(1, n):
        power = _mul(power, a)
        np.maximum(star, power, out=star)
    logger.debug("Kleene star of %dx%d matrix (radius %.12g)", n, n, radius)
    return _frozen(star)


def trop_norm(x: ArrayLike) -> float:
    """Tropical norm of a vector or matrix: its largest entry."""
    return float(np.max(as_tropical(x)))


def hilbert_seminorm(x: ArrayLike) -> float:
    """Multiplicative Hilbert seminorm ``‖x‖ ‖x^-‖`` (largest over smallest entry)."""
    x = as_tropical(x, ndim=1)
    if np.any(x == 0):
        raise DomainError("Hilbert seminorm needs a strictly positive vector")
    return trop_norm(x) * trop_norm(conj_transpose(x))
