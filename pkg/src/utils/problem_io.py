"""Load, parse and serialize problem documents (JSON or YAML).

A problem document is a mapping::

    labels:
      criteria: [learning, friends]
      alternatives: [A, B, C]
    criteria: [[1, 3], ["1/3", 1]]
    alternatives:
      learning: [[1, "1/3", "1/2"], [3, 1, 3], [2, "1/3", 1]]
      friends:  [[1, 1, 1], [1, 1, 1], [1, 1, 1]]

``alternatives`` may also be a list of grids in criteria order. Entries are
numbers or exact fractions ``"p/q"``. A single-matrix document has the keys
``matrix`` and optionally ``labels`` and ``name``.
"""

import json
import logging
import re
from fractions import Fraction
from pathlib import Path

import numpy as np
import yaml

from src.errors import ProblemFormatError, ShapeError
from src.models import DecisionProblem, PairwiseComparisonMatrix
from src.pairwise import build_problem, validate_reciprocal

logger = logging.getLogger(__name__)

_FRACTION = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_NUMBER = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")

# Largest denominator tried when writing entries back as fractions
_MAX_DENOMINATOR = 1000


def _load_document(text: str) -> dict:
    """Parse YAML (a superset of JSON) into a mapping."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        if mark is not None:
            raise ProblemFormatError(problem, mark.line + 1, mark.column + 1) from e
        raise ProblemFormatError(problem) from e
    if not isinstance(data, dict):
        raise ProblemFormatError("document must be a mapping")
    return data


def parse_entry(value, where: str) -> float:
    """Read one matrix entry: a number or a fraction string ``"p/q"``."""
    if isinstance(value, bool):
        raise ProblemFormatError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        match = _FRACTION.match(value)
        if match:
            numerator, denominator = int(match.group(1)), int(match.group(2))
            if denominator == 0:
                raise ProblemFormatError(f"{where}: zero denominator in {value!r}")
            return float(Fraction(numerator, denominator))
        if _NUMBER.match(value):
            return float(Fraction(value.strip()))
    raise ProblemFormatError(f"{where}: cannot read entry {value!r}")


def _parse_grid(grid, where: str) -> list[list[float]]:
    if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
        raise ProblemFormatError(f"{where}: expected a list of rows")
    if not grid:
        raise ShapeError(f"{where}: empty matrix")
    width = len(grid)
    for i, row in enumerate(grid, 1):
        if len(row) != width:
            raise ShapeError(f"{where}: row {i} has {len(row)} entries, expected {width}")
    return [
        [parse_entry(value, f"{where} entry ({i},{j})") for j, value in enumerate(row, 1)]
        for i, row in enumerate(grid, 1)
    ]


def _parse_labels(value, where: str) -> list[str] | None:
    if value is None:
        return None
    if not isinstance(value, list) or not all(isinstance(v, (str, int)) for v in value):
        raise ProblemFormatError(f"{where}: expected a list of names")
    labels = [str(v) for v in value]
    if len(set(labels)) != len(labels):
        raise ProblemFormatError(f"{where}: duplicate names in {labels}")
    return labels


def parse_problem(text: str) -> DecisionProblem:
    """
    Parse a problem document into a validated DecisionProblem.

    Raises:
        ProblemFormatError: syntax errors (with line/column), missing sections,
            unreadable entries.
        ShapeError, DomainError, ReciprocityError: from validation.
    """
    data = _load_document(text)
    for key in ("criteria", "alternatives"):
        if key not in data:
            raise ProblemFormatError(f"missing section '{key}'")

    labels = data.get("labels") or {}
    if not isinstance(labels, dict):
        raise ProblemFormatError("'labels' must be a mapping with 'criteria' and 'alternatives'")
    criterion_labels = _parse_labels(labels.get("criteria"), "labels.criteria")
    alternative_labels = _parse_labels(labels.get("alternatives"), "labels.alternatives")

    criteria = _parse_grid(data["criteria"], "criteria")

    alternatives = data["alternatives"]
    if isinstance(alternatives, dict):
        keyed = {str(k): v for k, v in alternatives.items()}
        if criterion_labels is None:
            criterion_labels = list(keyed)
        elif sorted(keyed) != sorted(criterion_labels):
            raise ShapeError(
                f"alternative matrices are keyed by {list(keyed)} "
                f"but the criteria are {criterion_labels}"
            )
        grids = [keyed[label] for label in criterion_labels]
    elif isinstance(alternatives, list):
        grids = alternatives
    else:
        raise ProblemFormatError("'alternatives' must be a list or a mapping of matrices")

    names = criterion_labels or []
    parsed = [
        _parse_grid(grid, f"alternatives[{names[k] if k < len(names) else k + 1}]")
        for k, grid in enumerate(grids)
    ]
    return build_problem(criteria, parsed, criterion_labels, alternative_labels)


def parse_matrix(text: str) -> PairwiseComparisonMatrix:
    """Parse a single-matrix document (keys ``matrix``, ``labels``, ``name``)."""
    data = _load_document(text)
    if "matrix" not in data:
        raise ProblemFormatError("missing section 'matrix'")
    labels = _parse_labels(data.get("labels"), "labels")
    name = str(data.get("name") or "matrix")
    grid = _parse_grid(data["matrix"], name)
    if labels is None:
        labels = [f"A{i}" for i in range(1, len(grid) + 1)]
    return validate_reciprocal(grid, name=name, labels=labels)


def _read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ProblemFormatError(f"{path}: not UTF-8 text (byte {e.start}: {e.reason})") from e


def load_problem(path: Path) -> DecisionProblem:
    """Read and parse a problem file."""
    problem = parse_problem(_read_text(path))
    logger.info("Loaded problem from %s", path)
    return problem


def load_matrix(path: Path) -> PairwiseComparisonMatrix:
    """Read and parse a single-matrix file."""
    matrix = parse_matrix(_read_text(path))
    logger.info("Loaded matrix from %s", path)
    return matrix


def format_entry(x: float) -> int | float | str:
    """Integers as ints, exact small fractions as ``"p/q"``, anything else as a float."""
    if x.is_integer():
        return int(x)
    f = Fraction(x).limit_denominator(_MAX_DENOMINATOR)
    if float(f) == x:
        return f"{f.numerator}/{f.denominator}"
    return x


def _grid(entries: np.ndarray) -> list[list]:
    return [[format_entry(float(x)) for x in row] for row in entries]


def serialize_problem(problem: DecisionProblem) -> str:
    """Write a problem document that parses back to an identical DecisionProblem."""
    doc = {
        "labels": {
            "criteria": list(problem.criterion_labels),
            "alternatives": list(problem.alternative_labels),
        },
        "criteria": _grid(problem.criteria.entries),
        "alternatives": {
            label: _grid(a.entries)
            for label, a in zip(problem.criterion_labels, problem.alternatives)
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
