"""Exception and warning types shared across the package."""


class CPScaleError(Exception):
    """Base class for errors raised by cpscale."""


class NumericRangeError(CPScaleError, ArithmeticError):
    """A computation left the representable range (overflow, failed bracket)."""


class DomainError(CPScaleError, ValueError):
    """An input lies outside the mathematical domain of the requested quantity."""


class TruncationError(CPScaleError, ArithmeticError):
    """The series could not be truncated within the configured order budget.

    Carries the residual bound actually achieved so callers can decide
    whether the partial answer is still usable.
    """

    def __init__(self, message, *, achieved_residual, orders_used):
        super().__init__(message)
        self.achieved_residual = achieved_residual
        self.orders_used = orders_used


class ResourceError(CPScaleError, RuntimeError):
    """A table would exceed the memory budget."""

    def __init__(self, message, *, required_bytes, budget_bytes):
        super().__init__(message)
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes


class UnsupportedSmoothnessError(CPScaleError, ValueError):
    """The jump distribution does not declare enough smoothness for the request."""


class ConfigError(CPScaleError, ValueError):
    """A run configuration could not be parsed or validated (CLI exit code 2)."""


class ConditioningWarning(UserWarning):
    """The alternating series lost significant digits to cancellation."""
