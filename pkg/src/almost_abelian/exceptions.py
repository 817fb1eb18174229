"""Exception hierarchy shared by every module."""


class AlmostAbelianError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(AlmostAbelianError, ValueError):
    """Malformed algebra data, wrong sizes, or incompatible structures."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})


class PreconditionError(AlmostAbelianError, ValueError):
    """An operation was called outside the domain where its formula holds."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})


class ConsistencyError(AlmostAbelianError, RuntimeError):
    """Two independent routes to the same quantity disagree.

    The routes are tied together by an identity, so a disagreement beyond
    tolerance always indicates a bug (or a tolerance far too tight for the
    input) and is never silently resolved.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = dict(details or {})


class NoWitnessError(AlmostAbelianError, ValueError):
    """No integer conjugacy witness is known for a block."""


class DegeneracyError(AlmostAbelianError, ArithmeticError):
    """Eigenvalue clustering is too ill-conditioned to produce a normal form."""

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class NonConvergenceError(AlmostAbelianError, RuntimeError):
    """An iterative procedure stopped before reaching its tolerance."""

    def __init__(self, message, state=None, summary=None):
        super().__init__(message)
        self.state = state
        self.summary = dict(summary or {})


class StagnationError(NonConvergenceError):
    """Backtracking drove the step size below the underflow floor."""
