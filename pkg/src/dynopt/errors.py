"""Shared exception types."""


class ConfigError(ValueError):
    """A configuration value or override is invalid."""


class DimensionMismatch(ValueError):
    """An input vector does not match the problem's current dimension."""


class BudgetExhausted(RuntimeError):
    """Raised by an evaluation budget guard once no evaluations remain."""
