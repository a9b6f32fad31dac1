"""Exception hierarchy shared across the package."""


class GaussBellError(Exception):
    """Base class for all package-specific errors."""


class DomainError(GaussBellError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TriangleViolation(DomainError):
    """A local-invariant triple violates the pure-state triangle constraints."""


class NumericalDomainError(DomainError):
    """A radicand or log argument fell below its tolerated numerical range."""


class DimensionMismatch(GaussBellError, ValueError):
    """Phase-space point or matrix dimensions are incompatible."""


class InvalidCovarianceMatrix(GaussBellError, ValueError):
    """Matrix fails the bona fide covariance-matrix conditions."""


class ConsistencyError(GaussBellError):
    """An internal cross-check failed; results cannot be trusted."""


class ParseError(GaussBellError, ValueError):
    """Malformed Bell-expression file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
