"""Exception hierarchy for hmclass.

Every domain error derives from :class:`HMClassError`, itself a ``ValueError``,
so callers can catch bad input and failed invariants with one ``except`` clause.
"""


class HMClassError(ValueError):
    """Base class for all hmclass errors."""


class ConfigError(HMClassError):
    """Invalid setting (environment variable or explicit argument)."""


class ParseError(HMClassError):
    """Malformed arrangement file."""

    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        if line_no:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class NotReduced(HMClassError):
    """Two hyperplanes of an arrangement are proportional."""


class DimensionError(HMClassError):
    """Ambient dimension outside the range an operation supports."""


class UnsupportedDimension(DimensionError):
    """A closed formula is only known for the listed dimensions."""


class LatticeTooLarge(HMClassError):
    """Flat enumeration exceeded the configured cap."""


class NotDivisible(HMClassError):
    """A polynomial is not divisible by the requested power of (1+y)."""


class OrderMismatch(HMClassError):
    """Truncated series of different orders were combined."""


class NotMonic(HMClassError):
    """A characteristic polynomial is not monic of the expected degree."""


class SupportViolation(HMClassError):
    """A class that must live on the singular locus has components above its dimension."""


class ExponentOutOfRange(HMClassError):
    """A spectral exponent lies outside (0, n]."""


class EngineMismatch(HMClassError):
    """Two derivations of the same class disagree."""
