"""Exception types raised across the package."""


class SpexError(Exception):
    """Base class for every error raised by spexlab."""


class InvalidParameter(SpexError, ValueError):
    pass


class CapacityExceeded(SpexError):
    pass


class MalformedGraph6(SpexError, ValueError):
    pass


class ConvergenceFailure(SpexError, ArithmeticError):
    def __init__(self, message, best_residual=float("nan")):
        super().__init__(message)
        self.best_residual = best_residual


class DimensionMismatch(SpexError, ValueError):
    pass


class ZeroVector(SpexError, ValueError):
    pass


class DegenerateOrder(SpexError, ValueError):
    pass


class InvalidDistribution(SpexError, ValueError):
    pass


class OrderMismatch(SpexError, ValueError):
    pass


class DisconnectedInput(SpexError, ValueError):
    pass


class InvalidQuery(SpexError, ValueError):
    pass


class InvalidEpsilon(SpexError, ValueError):
    pass


class BudgetExceeded(SpexError):
    """A search gave up after its node-expansion budget; the answer is unknown."""

    def __init__(self, message, expansions=0):
        super().__init__(message)
        self.expansions = expansions


class InternalAssertion(SpexError, AssertionError):
    """A result failed independent re-verification."""
