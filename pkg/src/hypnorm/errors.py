"""Exception types shared across the package."""


class HypnormError(Exception):
    """Base class for all package-specific errors."""


class InvalidElementError(HypnormError, ValueError):
    """A word is not a valid normal form for the given group."""


class InvalidSplitError(HypnormError, ValueError):
    """geodesic split lengths do not add up to the word length."""


class InvalidInputError(HypnormError, ValueError):
    """Malformed argument outside the group-element cases."""


class UnsupportedBoundError(HypnormError, ValueError):
    """A bound was requested for a group it is not asserted for."""


class ResourceLimitError(HypnormError, RuntimeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, message, *, cap=None, requested=None):
        super().__init__(message)
        self.cap = cap
        self.requested = requested


class ConvergenceError(HypnormError, RuntimeError):
    """Iterative norm estimation did not converge; carries the best lower bound."""

    def __init__(self, message, *, best_value=0.0, iterations=0):
        super().__init__(message)
        self.best_value = best_value
        self.iterations = iterations
