"""Exception types shared across the package.

``DataError`` subclasses indicate bad or inconsistent input data (curve
files, code parameters); they map to CLI exit code 2.  ``BudgetExceeded``
maps to exit code 3.
"""


class AGError(Exception):
    """Base class for all package-specific errors."""


class DataError(AGError):
    """Invalid or inconsistent input data."""


class ZeroInversion(AGError, ZeroDivisionError):
    """Multiplicative inverse of the zero field element was requested."""


class CurveFormatError(DataError):
    """A curve file could not be parsed or fails a structural check."""


class GenusMismatch(DataError):
    """Gap count derived from the footprint differs from the declared genus."""


class NotANongap(AGError, ValueError):
    """A pole order outside the Weierstrass semigroup was requested."""


class NotDivisible(AGError, ArithmeticError):
    """Quotient does not exist in the coordinate ring."""


class RankDeficient(DataError):
    """Fewer independent evaluation rows than points; point data is bad."""


class SearchBoundExceeded(DataError):
    """No vanishing element found below the theoretical degree bound."""


class InvalidGamma(DataError):
    """A requested code support value is outside the admissible set."""


class EmptyGamma(DataError):
    """No pole order satisfies the requested designed distance."""


class BudgetExceeded(AGError):
    """The decoder hit its iteration cap."""


class NearestUnavailable(AGError):
    """No sufficiently low-weight codeword found for directed errors."""
