"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ZeroDivisorError(DomainError):
    """A quantity required to be nonzero fell below the zero-divisor guard."""


class ClassViolation(DomainError):
    """A series does not satisfy the coefficient class it was declared in."""


class NoWitnessError(RuntimeError):
    """No extremal member on the ladder exceeded 1 beyond the radius."""
