"""Exception hierarchy for the census engine."""


class CensusError(Exception):
    """Base class for every error raised by drinfeld-census."""


class NonPrimeError(CensusError, ValueError):
    """The characteristic passed to a field constructor is not prime."""


class CapExceededError(CensusError, ValueError):
    """A requested enumeration is larger than the configured cap."""


class DivisionByZeroError(CensusError, ZeroDivisionError):
    """Inversion of zero in a field or division by the zero polynomial."""


class ZeroPolynomialError(CensusError, ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class ContextMismatchError(CensusError, ValueError):
    """Operands belong to different fields or tower levels."""


class PolynomialParseError(CensusError, ValueError):
    """Polynomial text does not follow the documented grammar."""


class EvenCharacteristicUnsupportedError(CensusError, ValueError):
    """Class-number theory is only implemented for odd q."""


class NotSquarefreeError(CensusError, ValueError):
    """A fundamental discriminant was expected."""


class NotImaginaryError(CensusError, ValueError):
    """The place at infinity splits in the quadratic extension."""


class MixedParametersError(CensusError, ValueError):
    """Reports with different (d, m) were combined."""


class ConfigError(CensusError, ValueError):
    """Invalid run configuration."""


class InvariantViolationError(CensusError, RuntimeError):
    """An internal identity failed. Always an implementation bug."""


class TooManyFactorsError(InvariantViolationError):
    """More than two nontrivial invariant factors for a rank-2 module."""


class NoSolutionError(InvariantViolationError):
    """The Frobenius relation has no solution (c, mu)."""


class MultipleSolutionsError(InvariantViolationError):
    """The Frobenius relation does not determine (c, mu) uniquely."""


class NonIntegerResultError(InvariantViolationError):
    """The conductor formula produced a non-integral class number."""
