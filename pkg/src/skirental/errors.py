class SkiRentalError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(SkiRentalError):
    """An argument lies outside the domain of the operation."""


class BracketError(SkiRentalError):
    """The function does not change sign across the bracket."""


class NumericError(SkiRentalError):
    """A function evaluation produced a non-finite value."""
