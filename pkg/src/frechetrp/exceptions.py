"""Exception types raised across the package."""


class FrechetRPError(Exception):
    """Base class for all errors raised by frechetrp."""


class ValidationError(FrechetRPError, ValueError):
    """Invalid input data or parameters."""


class EmptyCurve(ValidationError):
    """A curve needs at least one vertex."""


class DimensionMismatch(ValidationError):
    """Vertices or curves do not share one ambient dimension."""


class NonFiniteCoordinate(ValidationError):
    """A coordinate is NaN or infinite."""


class DimensionTooSmall(ValidationError):
    """The requested construction needs a higher ambient dimension."""


class InvalidEpsilon(ValidationError):
    """The distortion parameter must lie in (0, 1)."""


class InsufficientData(ValidationError):
    """Not enough vertices to fit the requested projection."""


class EmptySet(ValidationError):
    """The operation needs a non-empty curve set."""


class NoEligiblePair(FrechetRPError):
    """No pair of curves satisfies the required cost gap."""


class ParseError(FrechetRPError, ValueError):
    """Malformed curve CSV input.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
