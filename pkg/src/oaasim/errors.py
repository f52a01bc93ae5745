"""Exception hierarchy shared by all modules.

ValidationError covers malformed inputs (wrong shapes, broken preconditions
the caller can fix); NumericalError covers failures discovered during the
computation itself (indefinite matrices, degenerate decompositions, lost
amplitude mass). The command line maps them to exit codes 1 and 2.
"""


class SimulatorError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SimulatorError):
    """Input fails a documented precondition."""


class NumericalError(SimulatorError):
    """Computation failed for a numerical reason."""


class DimensionError(ValidationError):
    """Shapes or register dimensions do not match."""


class SymmetryError(ValidationError):
    """Matrix required to be symmetric is not."""


class UnitNormError(ValidationError):
    """Vector required to have unit 2-norm does not."""


class RowNormError(ValidationError):
    """Matrix rows violate a required 2-norm bound."""


class ZeroMatrixError(ValidationError):
    """Matrix with at least one nonzero entry required."""


class NotPositiveSemidefiniteError(NumericalError):
    """Eigenvalue below the clamp threshold in a PSD square root."""


class PolarDegenerateError(NumericalError):
    """Eigenvalue too close to zero to fix the polar sign."""


class SpectralRadiusError(NumericalError):
    """Spectral norm exceeds the bound required for the exact extension."""


class ConvergenceError(NumericalError):
    """Iterative solver exhausted its sweep budget."""


class NoGoodAmplitudeError(NumericalError):
    """State carries no measurable mass on the good subspace."""
