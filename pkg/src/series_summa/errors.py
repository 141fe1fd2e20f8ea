"""Exception types shared across the package."""

__all__ = [
    "SeriesSummaError",
    "NonConvergence",
    "DomainError",
    "DegenerateInput",
    "UnknownKernel",
    "UnknownMethod",
    "ResonanceError",
]


class SeriesSummaError(Exception):
    """Base class for errors raised by this package."""


class NonConvergence(SeriesSummaError):
    """An iterative or adaptive computation exhausted its budget before
    reaching the requested tolerance."""


class DomainError(SeriesSummaError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DegenerateInput(SeriesSummaError, ValueError):
    """Input system is numerically degenerate (e.g. linearly dependent
    functions handed to orthonormalization)."""


class UnknownKernel(SeriesSummaError, KeyError):
    """Requested kernel name is not in the catalog."""


class UnknownMethod(SeriesSummaError, KeyError):
    """Requested summation method name is not in the catalog."""


class ResonanceError(SeriesSummaError):
    """A Helmholtz problem was posed at (or too close to) an eigenvalue of
    the Laplacian on the rectangle; the series solution does not exist."""
