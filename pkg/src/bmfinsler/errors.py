"""Exception types raised across the package.

Every error carries a short ``precondition`` label so the command-line
front end can report which requirement was violated.
"""


class BMError(ValueError):
    precondition = "unspecified"

    def __init__(self, message, precondition=None):
        super().__init__(message)
        if precondition is not None:
            self.precondition = precondition


class DomainError(BMError):
    """Input lies outside the up-sector (or another stated domain)."""

    precondition = "up-sector"


class AdmissibilityError(DomainError):
    """A velocity has a non-positive bracket factor."""

    precondition = "velocity-admissible"


class SpacelikeSeparationError(DomainError):
    """The chord between two points is not timelike.

    ``interval_sq`` holds the computed squared interval, which is <= 0.
    """

    precondition = "timelike-chord"

    def __init__(self, message, interval_sq):
        super().__init__(message)
        self.interval_sq = float(interval_sq)


class RangeError(DomainError):
    precondition = "parameter-range"


class ChartOverflowError(BMError, ArithmeticError):
    precondition = "finite-result"
