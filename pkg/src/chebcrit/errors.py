"""Exception types shared by the chebcrit modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NumericError(ArithmeticError):
    """An iterative method failed to converge or produced an unusable value."""


class LogOverflowError(OverflowError):
    """A log-scaled value is too large to be converted back to a float."""
