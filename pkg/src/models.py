"""Pydantic data models used across the library and the reports."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.errors import DomainError


def readonly_array(values) -> np.ndarray:
    """Float copy of ``values`` with the writeable flag cleared."""
    a = np.array(values, dtype=float)
    a.flags.writeable = False
    return a


class Normalization(str, Enum):
    MAX = "max"  # largest entry is 1
    SUM = "sum"  # entries sum to 1
    RAW = "raw"


class Method(str, Enum):
    LCA = "lca"
    AHP = "ahp"
    WGM = "wgm"


class ArrayModel(BaseModel):
    """Immutable model whose array fields are read-only numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


# ── Inputs ────────────────────────────────────────────────────────────


class RatingVector(ArrayModel):
    """Positive ratings of alternatives (or weights of criteria).

    Ratings are defined up to a positive factor; ``normalization`` records
    which representative of the ray is stored. Build instances with
    ``from_values`` so positivity and the convention are enforced.
    """

    values: np.ndarray
    normalization: Normalization = Normalization.RAW

    @field_validator("values", mode="before")
    @classmethod
    def _freeze(cls, v) -> np.ndarray:
        return readonly_array(v)

    @classmethod
    def from_values(
        cls, values, normalization: Normalization = Normalization.RAW
    ) -> "RatingVector":
        """Rescale ``values`` to the requested convention.

        Raises:
            DomainError: an entry is not finite and strictly positive.
        """
        a = np.array(values, dtype=float).reshape(-1)
        if a.size == 0 or not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise DomainError(f"ratings must be finite and strictly positive, got {a.tolist()}")
        if normalization is Normalization.MAX:
            a = a / a.max()
        elif normalization is Normalization.SUM:
            a = a / a.sum()
        return cls(values=a, normalization=normalization)

    def to(self, normalization: Normalization) -> "RatingVector":
        """Same ray, another representative."""
        if normalization is self.normalization:
            return self
        return RatingVector.from_values(self.values, normalization)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


WeightVector = RatingVector


class PairwiseComparisonMatrix(ArrayModel):
    """Positive square matrix of ratios ``a_ij`` ("i is a_ij times preferred to j").

    Instances come from ``pairwise.validate_reciprocal`` or
    ``pairwise.consistent_from_vector``, which enforce reciprocity and set the
    diagonal to exactly 1.
    """

    entries: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str | None = None

    @field_validator("entries", mode="before")
    @classmethod
    def _freeze(cls, v) -> np.ndarray:
        return readonly_array(v)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


class DecisionProblem(ArrayModel):
    """Criteria comparison matrix C plus one alternatives matrix A_k per criterion.

    Build instances with ``pairwise.build_problem``.
    """

    criteria: PairwiseComparisonMatrix
    alternatives: tuple[PairwiseComparisonMatrix, ...]
    criterion_labels: tuple[str, ...]
    alternative_labels: tuple[str, ...]

    @property
    def m(self) -> int:
        """Number of criteria."""
        return self.criteria.n

    @property
    def n(self) -> int:
        """Number of alternatives."""
        return self.alternatives[0].n


class Ranking(BaseModel):
    """Ordered partition of indices: best class first, ties grouped together."""

    model_config = ConfigDict(frozen=True)

    classes: tuple[tuple[int, ...], ...]

    def labelled(self, labels) -> list[list[str]]:
        return [[labels[i] for i in group] for group in self.classes]

    def render(self, labels) -> str:
        """Render as e.g. ``A ≡ C ≻ B``."""
        return " ≻ ".join(" ≡ ".join(group) for group in self.labelled(labels))

    def positions(self) -> list[int]:
        """1-based rank of every index; tied indices share a rank."""
        size = sum(len(group) for group in self.classes)
        out = [0] * size
        for rank, group in enumerate(self.classes, 1):
            for i in group:
                out[i] = rank
        return out


# ── Solver results ────────────────────────────────────────────────────


class GeneratingMatrix(ArrayModel):
    """Generating matrix ``B = (λ^-1 A)*`` of the log-Chebyshev solution set.

    Every optimal rating vector is ``B ⊗ u`` for some positive ``u``;
    ``radius`` is the optimal objective value λ.
    """

    source: np.ndarray
    generator: np.ndarray
    radius: float
    best_bound: float  # ‖B ⊗ B^-‖, the largest seminorm over normalized solutions
    worst_bound: float  # ‖B‖, the smallest one

    @field_validator("source", "generator", mode="before")
    @classmethod
    def _freeze(cls, v) -> np.ndarray:
        return readonly_array(v)

    @property
    def n(self) -> int:
        return int(self.generator.shape[0])

    def column(self, j: int) -> np.ndarray:
        return self.generator[:, j]


class DifferentiatingResult(ArrayModel):
    """Best (minimal, possibly several) and worst (unique) differentiating solutions."""

    best: tuple[RatingVector, ...]
    best_columns: tuple[int, ...]
    worst: RatingVector
    best_seminorm: float
    worst_seminorm: float
    worst_raw_max: float  # max entry of (1^T B)^- before any rescaling
    tie_flag: bool


class BestBranch(ArrayModel):
    """Ratings stage run for one best differentiating weight vector w."""

    weights: RatingVector
    weighted_matrix: np.ndarray  # P = ⊕ w_k A_k
    generator: GeneratingMatrix  # Q with radius μ
    ratings: tuple[RatingVector, ...]
    rankings: tuple[Ranking, ...]

    @field_validator("weighted_matrix", mode="before")
    @classmethod
    def _freeze(cls, v) -> np.ndarray:
        return readonly_array(v)


class LcaSolution(ArrayModel):
    """Result of the multicriteria log-Chebyshev procedure.

    ``branches[0]`` is the headline best branch (lowest column index of D);
    the worst branch uses the unique worst weight vector v.
    """

    criteria_generator: GeneratingMatrix  # D with radius λ
    weights: DifferentiatingResult
    branches: tuple[BestBranch, ...]
    worst_matrix: np.ndarray  # R = ⊕ v_k A_k
    worst_generator: GeneratingMatrix  # S with radius ν
    ratings_worst: RatingVector
    ranking_worst: Ranking
    worst_raw_max: float

    @field_validator("worst_matrix", mode="before")
    @classmethod
    def _freeze(cls, v) -> np.ndarray:
        return readonly_array(v)

    @property
    def lam(self) -> float:
        return self.criteria_generator.radius

    @property
    def mu(self) -> float:
        return self.branches[0].generator.radius

    @property
    def nu(self) -> float:
        return self.worst_generator.radius

    @property
    def weights_best(self) -> RatingVector:
        return self.branches[0].weights

    @property
    def weights_worst(self) -> RatingVector:
        return self.weights.worst

    @property
    def best_matrix(self) -> np.ndarray:
        return self.branches[0].weighted_matrix

    @property
    def ratings_best(self) -> tuple[RatingVector, ...]:
        return self.branches[0].ratings

    @property
    def ranking_best(self) -> Ranking:
        return self.branches[0].rankings[0]


class ClassicalSolution(ArrayModel):
    """AHP or WGM result; both normalization views of the ratings are available."""

    method: Method
    criterion_weights: RatingVector
    per_criterion_vectors: tuple[RatingVector, ...]
    ratings: RatingVector
    principal_eigenvalues: tuple[float, ...] = ()
    criteria_eigenvalue: float | None = None
    ranking: Ranking

    @property
    def ratings_max(self) -> RatingVector:
        return self.ratings.to(Normalization.MAX)


# ── Report documents ──────────────────────────────────────────────────


class RatingsView(BaseModel):
    sum_normalized: list[float]
    max_normalized: list[float]


class Diagnostics(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: float | None = Field(default=None, alias="lambda")
    mu: float | None = None
    nu: float | None = None
    eigenvalues: list[float] | None = None
    criteria_eigenvalue: float | None = None
    approximation_error: float | None = None  # optimal objective minus 1


class AlternateOptimum(BaseModel):
    """Another optimal rating vector, with the weights and μ of the branch it came from."""

    ratings: RatingsView
    ranking: list[list[str]]
    ranking_text: str
    weights: list[float] = Field(default_factory=list)
    mu: float | None = None


class MethodReport(BaseModel):
    """One method's opinion on the alternatives."""

    method: str
    title: str
    alternatives: list[str]
    criteria: list[str] = Field(default_factory=list)
    weights: list[float] = Field(default_factory=list)
    weights_normalization: str | None = None
    ratings: RatingsView
    alternates: list[AlternateOptimum] = Field(default_factory=list)
    ranking: list[list[str]]
    ranks: list[int]  # 1-based rank per alternative, ties share a rank
    ranking_text: str
    tie: bool = False  # some alternatives share a rank
    multiple_solutions: bool = False  # more than one best differentiating vector
    diagnostics: Diagnostics = Field(default_factory=Diagnostics)


class ProblemEcho(BaseModel):
    criteria: list[str]
    alternatives: list[str]
    criteria_matrix: list[list[float]]
    alternative_matrices: list[list[list[float]]]


class ComparisonSummary(BaseModel):
    counted: list[str]
    votes: dict[str, int]
    plurality: list[str]


class ReportDocument(BaseModel):
    """Full result of ``solve``, serialized by ``--format json``."""

    tool: str
    version: str
    tie_tolerance: float
    problem: ProblemEcho
    methods: list[MethodReport]
    comparison: ComparisonSummary | None = None


class SingleReportDocument(BaseModel):
    """Result of ``single`` on one comparison matrix."""

    tool: str
    version: str
    tie_tolerance: float
    labels: list[str]
    matrix: list[list[float]]
    methods: list[MethodReport]


class MatrixCheck(BaseModel):
    """Per-matrix line of the ``validate`` report."""

    name: str
    size: int
    consistent: bool
    spectral_radius: float  # 1 for a consistent matrix, larger otherwise


class SolveResult(ArrayModel):
    """Report plus the in-process solutions it was built from."""

    report: ReportDocument
    lca: LcaSolution | None = None
    ahp: ClassicalSolution | None = None
    wgm: ClassicalSolution | None = None
