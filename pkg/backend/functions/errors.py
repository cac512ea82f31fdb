"""
Exceptions raised by the starrad library
"""


class StarradError(ValueError):
    """Base class for all library errors."""


class DiskDomainError(StarradError):
    """A point or radius lies outside the open unit disk."""


class SingularityError(StarradError):
    """An expression hit a zero denominator or produced a non-finite value."""


class BracketError(StarradError):
    """A bracketed root search found no sign change."""


class RangeError(StarradError):
    """A lemma parameter lies outside the interval where the lemma holds."""


class NearBoundaryError(StarradError):
    """The winding integral is too close to a half-integer to round safely."""

    def __init__(self, message: str, value: complex = 0j):
        super().__init__(message)
        self.value = value


class ClaimError(StarradError):
    """A sharpness check was requested for a pair that is only a lower bound."""
