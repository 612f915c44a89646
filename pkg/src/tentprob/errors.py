"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class ConvergenceError(ArithmeticError):
    """An iterative method did not reach its tolerance within its budget."""


class DegenerateDataError(ValueError):
    """The data cannot support the requested statistic (too short, constant, ...)."""


class RegionError(ValueError):
    """A hypothesis region is malformed (unsorted, overlapping or empty intervals)."""


class HypothesisParseError(ValueError):
    """A hypothesis string does not match the grammar."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
