"""Exception types shared across the package."""


class RelWignerError(Exception):
    """Base class for all package errors."""


class InvalidInputError(RelWignerError, ValueError):
    """Malformed or inconsistent input data."""


class DomainError(RelWignerError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(RelWignerError, ValueError):
    """Proper time or offset outside the trajectory / grid range."""


class PreconditionError(RelWignerError, ValueError):
    """A documented precondition of an operation is violated."""


class AccuracyError(RelWignerError, RuntimeError):
    """Quadrature failed to reach the requested tolerance.

    Carries the best value and the error estimate so callers can decide
    whether to accept the result anyway.
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class HorizonError(RelWignerError, ValueError):
    """No reception event exists (signal emitted behind the horizon)."""


class AiryRegimeError(RelWignerError, ValueError):
    """Point too close to the instantaneous-frequency curve for the
    stationary-phase approximation; caller should fall back to the
    numeric grid."""
