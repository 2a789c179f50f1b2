"""Shared fixtures: the school-selection problem and random matrix factories."""

from fractions import Fraction

import numpy as np
import pytest

from src.config import PROJECT_ROOT
from src.pairwise import build_problem

SCHOOL_PATH = PROJECT_ROOT / "problems" / "school.json"
GOLDEN_DIR = PROJECT_ROOT / "tests" / "golden"

CRITERION_LABELS = (
    "learning",
    "friends",
    "school life",
    "vocational training",
    "college preparation",
    "music classes",
)


def _grid(rows: str) -> np.ndarray:
    return np.array([[float(Fraction(e)) for e in row.split()] for row in rows.split(";")])


SCHOOL_C = _grid(
    "1 4 3 1 3 4; 1/4 1 7 3 1/5 1; 1/3 1/7 1 1/5 1/5 1/6;"
    "1 1/3 5 1 1 1/3; 1/3 5 5 1 1 3; 1/4 1 6 3 1/3 1"
)
SCHOOL_A = [
    _grid("1 1/3 1/2; 3 1 3; 2 1/3 1"),
    _grid("1 1 1; 1 1 1; 1 1 1"),
    _grid("1 5 1; 1/5 1 1/5; 1 5 1"),
    _grid("1 9 7; 1/9 1 1/5; 1/7 5 1"),
    _grid("1 1/2 1; 2 1 2; 1 1/2 1"),
    _grid("1 6 4; 1/6 1 1/3; 1/4 3 1"),
]


@pytest.fixture(scope="session")
def school_problem():
    return build_problem(SCHOOL_C, SCHOOL_A, CRITERION_LABELS, ("A", "B", "C"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_reciprocal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Reciprocal matrix with Saaty-like upper entries in [1/9, 9]."""
    a = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = np.exp(rng.uniform(np.log(1 / 9), np.log(9)))
            a[j, i] = 1.0 / a[i, j]
    return a


def random_positive(rng: np.random.Generator, n: int) -> np.ndarray:
    """Positive matrix with entries log-uniform in [1/9, 9]."""
    return np.exp(rng.uniform(np.log(1 / 9), np.log(9), size=(n, n)))


# Intermediate matrices of the school problem, as printed to four decimals
SCHOOL_D = _grid(
    "1.0000 2.2361 6.0434 2.5900 1.1583 1.5444;"
    "0.4472 1.0000 2.7027 1.1583 0.5180 0.6907;"
    "0.1287 0.2878 1.0000 0.3333 0.1491 0.1988;"
    "0.3861 0.8633 2.3333 1.0000 0.4472 0.5963;"
    "0.8633 1.9305 5.2175 2.2361 1.0000 1.3333;"
    "0.4472 1.0000 2.7027 1.1583 0.5180 1.0000"
)
SCHOOL_P = _grid("1.0000 3.4749 2.7027; 3.0000 1.0000 3.0000; 2.0000 1.9305 1.0000")
SCHOOL_Q = _grid("1.0000 1.0762 1.0000; 0.9292 1.0000 0.9292; 0.6194 0.6667 1.0000")
SCHOOL_R = _grid("1.0000 3.8850 2.7027; 3.0000 1.0000 3.0000; 2.0000 1.9425 1.0000")
SCHOOL_S = _grid("1.0000 1.1380 1.0000; 0.8787 1.0000 0.8787; 0.5858 0.6667 1.0000")

# Criteria matrix whose generating matrix has two incomparable minimal best
# columns (1 and 3); λ = 6 from the cycle 1 -> 4 -> 2 -> 1.
TWO_BEST_C = _grid("1 1/6 1 9; 6 1 1 1/4; 1 1 1 1; 1/9 4 1 1")
TWO_BEST_W = (
    np.array([1.0, 1.0, 1 / 6, 2 / 3]),
    np.array([0.25, 0.25, 1.0, 1 / 6]),
)


@pytest.fixture(scope="session")
def two_best_problem():
    """Four criteria over three alternatives; each best weight vector gives its own μ."""
    return build_problem(TWO_BEST_C, [SCHOOL_A[0], SCHOOL_A[2], SCHOOL_A[3], SCHOOL_A[5]])


@pytest.fixture(scope="session")
def reciprocal_set():
    """One hundred random reciprocal matrices, n cycling through 3..6."""
    rng = np.random.default_rng(31337)
    return [random_reciprocal(rng, 3 + k % 4) for k in range(100)]
