"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An input violates a documented invariant (bad prior parameters, data, or set)."""


class NumericError(ArithmeticError):
    """A numeric routine failed to converge within its iteration budget."""
