"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class NotEuclidean(ValueError):
    """A squared-distance matrix is not realizable in Euclidean space."""


class NotSimplex(ValueError):
    """A point set is not affinely independent at the working tolerance."""


class NotAlmostRegular(ValueError):
    """A distance matrix violates the almost-regularity condition."""


class TrivialInput(ValueError):
    """The input is too small for the requested operation."""


class VerificationFailed(RuntimeError):
    """A freshly constructed certificate failed its own verification."""


class InvalidCertificate(ValueError):
    """A certificate is structurally invalid (before any metric check)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
