"""Exception hierarchy shared by every confluentia module."""


class ConfluentiaError(ValueError):
    """Base class for all library errors."""


class ZeroLeading(ConfluentiaError):
    """The leading coefficient polynomial P0 vanishes identically."""


class CommonFactor(ConfluentiaError):
    """P0, P1 and P2 share a nonconstant factor."""


class NotASingularity(ConfluentiaError):
    """The requested point is not a singular point of the equation."""


class IrregularPoint(ConfluentiaError):
    """Frobenius exponents were requested at an irregular singular point."""


class IrrationalExponents(ConfluentiaError):
    """The indicial equation has no rational roots."""

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class InconsistentSymbols(ConfluentiaError):
    """Two s-multisymbols cannot be related by a single confluence."""


class NoConvergence(ConfluentiaError):
    """An eigenvalue failed to stabilise before the truncation cap."""


class GridTooCoarse(ConfluentiaError):
    """The sampling grid under-resolves the function being differentiated."""


class ShiftOffGrid(ConfluentiaError):
    """A translation is not a multiple of the grid step and interpolation is off."""


class OddGrid(ConfluentiaError):
    """A half-period shift was requested on a grid with an odd number of points."""


class MalformedInput(ConfluentiaError):
    """An input document does not follow its schema."""
