"""
Error kinds shared by every app.

Management commands translate them into exit codes:
InvalidInputError / UndefinedValueError -> 1, ConsistencyError -> 2,
ResourceLimitError -> 3.
"""


class PadjError(Exception):
    """Base class for everything raised by the padj apps."""


class InvalidInputError(PadjError, ValueError):
    """Malformed permutation, out-of-range parameter or bad move."""


class ResourceLimitError(PadjError):
    """A request asks for more enumeration or search than the configured limit."""

    def __init__(self, what, n, limit):
        self.what = what
        self.n = n
        self.limit = limit
        super().__init__(f"{what} refused for n={n}: limit is {limit}")


class UndefinedValueError(PadjError, ArithmeticError):
    """A quantity with an empty support, e.g. an average over an empty class."""


class ConsistencyError(PadjError, ArithmeticError):
    """An identity that must hold exactly did not (non-integral quotient, table mismatch)."""
