"""Exception types raised by the library and their command-line exit codes."""


class ShapeError(ValueError):
    """Operands or documents have incompatible dimensions."""


class DomainError(ValueError):
    """A value lies outside the domain of an operation (zero, negative, non-finite)."""


class ReciprocityError(ValueError):
    """A comparison matrix violates a_ij * a_ji = 1 beyond tolerance."""

    def __init__(self, row: int, col: int, product: float, name: str | None = None):
        self.row = row
        self.col = col
        self.product = product
        self.name = name
        where = f"matrix '{name}'" if name else "matrix"
        super().__init__(
            f"{where} is not reciprocal at entry ({row},{col}): "
            f"a_{row}{col} * a_{col}{row} = {product:.6g}"
        )


class ProblemFormatError(ValueError):
    """A problem document cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class StarDivergenceError(ArithmeticError):
    """Kleene star requested for a matrix with spectral radius above 1."""

    def __init__(self, radius: float):
        self.radius = radius
        super().__init__(f"Kleene star undefined: spectral radius {radius:.12g} > 1")


class ConvergenceError(ArithmeticError):
    """An iterative method stopped without meeting its tolerance."""

    def __init__(self, iterations: int, delta: float):
        self.iterations = iterations
        self.delta = delta
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last step {delta:.3e})"
        )


EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# Checked in order; ProblemFormatError must precede the other ValueErrors.
EXIT_CODES: tuple[tuple[type[Exception], int], ...] = (
    (ProblemFormatError, EXIT_USAGE),
    (OSError, EXIT_USAGE),  # missing file, directory, no permission
    (ReciprocityError, EXIT_VALIDATION),
    (DomainError, EXIT_VALIDATION),
    (ShapeError, EXIT_VALIDATION),
    (StarDivergenceError, EXIT_NUMERICAL),
    (ConvergenceError, EXIT_NUMERICAL),
)


def exit_code_for(exc: BaseException) -> int | None:
    """Return the exit code for a known error, or None if it is unexpected."""
    for exc_type, code in EXIT_CODES:
        if isinstance(exc, exc_type):
            return code
    return None
