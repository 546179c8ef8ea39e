"""Exception hierarchy for heiscf."""


class HeisCFError(Exception):
    """Base class for all heiscf errors."""


class ParseError(HeisCFError):
    """Malformed text input (points, matrices, Gaussian integers)."""


class BackendMismatch(HeisCFError):
    """Operation mixing exact and big-float points."""


class PointAtInfinity(HeisCFError):
    """Projective point with vanishing first coordinate."""


class InversionAtOrigin(HeisCFError):
    """Koranyi inversion applied at v = 0."""


class AmbiguousNearestInteger(HeisCFError):
    """Two nearest-integer candidates indistinguishable at working precision."""


class CertificationError(HeisCFError):
    """Big-float expansion could not be certified to the requested depth."""


class InvalidDigitString(HeisCFError):
    """Digit sequence that cannot be reconstructed (intermediate v = 0)."""


class NotInU21(HeisCFError):
    """Matrix fails the J M^dag J M = I membership relation."""


class InternalError(HeisCFError):
    """Invariant violation that indicates a bug, not bad input."""
