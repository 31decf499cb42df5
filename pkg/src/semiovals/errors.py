"""Exception types shared across the package."""


class SemiovalsError(Exception):
    """Base class for all package-specific errors."""


class NotPrimeError(SemiovalsError, ValueError):
    """The requested characteristic is not a prime."""


class UnsupportedSizeError(SemiovalsError, ValueError):
    """The requested field exceeds the supported range (q^2 <= 2^20)."""


class EqualPointsError(SemiovalsError, ValueError):
    """Two distinct points were required but equal points were given."""


class NotOnCurveError(SemiovalsError, ValueError):
    """A curve point was required but the point is off the curve."""


class EmptySetError(SemiovalsError, ValueError):
    """A nonempty point set was required."""


class NotSubsetError(SemiovalsError, ValueError):
    """A subset relation required by the operation does not hold."""


class NotSubsetOfCurveError(NotSubsetError):
    """The point set is not contained in the curve."""


class UnachievableSizeError(SemiovalsError, ValueError):
    """The requested spectrum size is excluded by the fill constraints."""


class TooLargeError(SemiovalsError, ValueError):
    """Exhaustive search is only supported for q <= 3."""


class DecompositionNotFoundError(SemiovalsError, RuntimeError):
    """The arc decomposition failed verification (implementation bug)."""


class CoverImpossibleError(SemiovalsError, RuntimeError):
    """Some line is covered by no arc; the cover problem is infeasible."""


class BadParametersError(SemiovalsError, ValueError):
    """Parameters violate a construction's hypothesis."""
