"""Exception types shared across the library.

Every error raised by the public API is a subclass of StackyError, so callers
can catch one base class.  The CLI maps EnumerationTooLarge to exit code 3 and
everything else to a usage or verification failure.
"""


class StackyError(Exception):
    """Base class for all library errors."""


class CompositeCharacteristic(StackyError):
    """Field characteristic is not prime."""


class InvalidDegree(StackyError):
    """Extension degree below 1."""


class DivisionByZero(StackyError, ZeroDivisionError):
    """Inverse or division requested for the zero element or polynomial."""


class EnumerationTooLarge(StackyError):
    """An exhaustive scan would exceed the configured budget."""

    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(f"enumeration of size {size} exceeds budget {budget}")


class UndefinedGcd(StackyError):
    """gcd(0, 0) requested."""


class ZeroPolynomialResultant(StackyError):
    """Resultant with a zero polynomial argument."""


class InvalidPoint(StackyError):
    """The pair (0, 0) is not a point of the cover."""


class OutOfTableRange(StackyError):
    """Cohomology table requested outside its stated parameter range."""


class WrongTableKind(StackyError):
    """Operation requires the other (compact vs ordinary) table kind."""


class InsufficientCounts(StackyError):
    """Fewer point counts supplied than the requested series order."""


class NotExpandable(StackyError):
    """Rational function with zero constant term in the denominator."""


class ModelMismatch(StackyError):
    """Count sequence is not of the two-eigenvalue form."""


class ZetaMismatch(StackyError):
    """Series from counts disagrees with the expanded rational function."""

    def __init__(self, index, from_counts, from_rational):
        self.index = index
        self.from_counts = from_counts
        self.from_rational = from_rational
        super().__init__(
            f"zeta coefficient mismatch at t^{index}: "
            f"counts give {from_counts}, rational function gives {from_rational}"
        )
