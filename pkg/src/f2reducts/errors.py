"""Exception types shared across the package."""


class F2ReductsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(F2ReductsError, ValueError):
    pass


class BudgetExhausted(F2ReductsError, RuntimeError):
    """A configurable resource cap was hit before the computation finished.

    Raised instead of returning a partial (and therefore possibly wrong)
    answer.
    """

    def __init__(self, what, limit):
        super().__init__(f"budget exhausted: {what} exceeded limit {limit}")
        self.what = what
        self.limit = limit


class HypothesisFailed(F2ReductsError, ValueError):
    pass


class GramMismatch(F2ReductsError, ValueError):
    pass


class DependentInput(F2ReductsError, ValueError):
    pass


class DegenerateForm(F2ReductsError, ValueError):
    pass


class InvariantViolation(F2ReductsError, AssertionError):
    """An internal cross-check failed. Always a bug."""
