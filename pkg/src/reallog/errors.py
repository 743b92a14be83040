"""Exception types raised across the package."""


class ReallogError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(ReallogError):
    """Matrix is numerically rank deficient where an inverse is required."""


class SingularMap(ReallogError):
    """Matrix-space map is not bijective."""


class ConvergenceFailure(ReallogError):
    """An iteration exhausted its sweep budget without converging."""


class LengthMismatch(ReallogError):
    """Spectra of different lengths cannot be matched."""


class DimensionMismatch(ReallogError):
    """Operands have incompatible shapes."""


class Overflow(ReallogError):
    """Matrix exponential exceeds the representable range."""


class NotInK(ReallogError):
    """Matrix has an eigenvalue on the closed negative real axis."""


class NotInKStar(ReallogError):
    """Matrix admits no real logarithm."""


class NegativeAxisEigenvalue(ReallogError):
    """Square root requested for a spectrum touching (-inf, 0]."""


class UnsupportedJordanStructure(ReallogError):
    """Negative eigenvalue is defective; construction limited to the
    semisimple case."""


class NotAnEigenvalue(ReallogError):
    """Probe value is not numerically an eigenvalue of the matrix."""


class NotScalarImage(ReallogError):
    """Image of the identity under the map is not a positive scalar matrix."""


class DegenerateRecovery(ReallogError):
    """Conjugator assembly produced a numerically singular matrix."""


class DegenerateAngle(ReallogError):
    """Angle with sin(theta) = 0 where the shear construction is undefined."""


class NonpositiveDeterminant(ReallogError):
    """2x2 analysis requires ad - bc > 0."""


class SampleBudgetExceeded(ReallogError):
    """Rejection sampling stalled before collecting enough points."""
