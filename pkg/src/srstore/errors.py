"""Exception types shared across the package.

Every error raised on purpose derives from SrstoreError so callers can
catch the package's failures without swallowing genuine bugs.
"""


class SrstoreError(Exception):
    """Base class for all srstore errors."""


class NotPrimePower(SrstoreError):
    """Field order is not a prime power >= 2."""


class DivisionByZero(SrstoreError):
    """Multiplicative inverse of zero requested."""


class DimensionMismatch(SrstoreError):
    """Operands have incompatible shapes or ambient dimensions."""


class DuplicateEvaluationPoint(SrstoreError):
    """Structured-matrix evaluation points are not pairwise distinct."""


class ZeroMultiplier(SrstoreError):
    """A column multiplier that must be nonzero is zero."""


class Singular(SrstoreError):
    """Inverse of a rank-deficient matrix requested."""


class NoSolution(SrstoreError):
    """Linear system has no solution."""


class NotContained(SrstoreError):
    """Subspace is not contained in the claimed superspace."""


class LengthMismatch(SrstoreError):
    """Vector length does not match the scheme's declared sizes."""


class CaseMismatch(SrstoreError):
    """Parameters violate the regime precondition of the construction."""


class FieldTooSmall(SrstoreError):
    """Field order below the construction's requirement."""


class FieldMismatch(SrstoreError):
    """Schemes live over different fields."""


class ParamMismatch(SrstoreError):
    """Schemes have different node parameters."""


class PatternMismatch(SrstoreError):
    """Erasure pattern is invalid for the scheme's parameters."""


class TooManyPatterns(SrstoreError):
    """Pattern enumeration exceeds the configured cap."""


class TooLarge(SrstoreError):
    """Exhaustive enumeration exceeds the configured cap."""


class Infeasible(SrstoreError):
    """Decoding requested for a pattern that cannot determine the message."""


class InconsistentObservation(SrstoreError):
    """Observed blocks lie outside the code's image."""


class InfeasibleScheme(SrstoreError):
    """Scheme fails the feasibility audit required for this operation."""


class NonInvertible(SrstoreError):
    """Label transformation matrix is not invertible."""


class LayoutMismatch(SrstoreError):
    """State layout does not expose the subsystems an operation expects."""


class UndefinedForZeroKB(SrstoreError):
    """Bound undefined when no assistance nodes are required to survive."""


class UnsupportedAlphabet(SrstoreError):
    """Byte payloads require q to be a power of two (at most 256)."""
