"""Exception hierarchy shared across the package."""


class WarpsepError(Exception):
    """Base class for all package-specific errors."""


class InvalidWarping(WarpsepError):
    """Warping function is not strictly increasing / has nonpositive slope."""


class DomainError(WarpsepError):
    """Requested evaluation points fall outside the available support."""


class InvalidSpectrum(WarpsepError):
    """Power spectrum has negative values or a malformed frequency grid."""


class IllConditionedMixing(WarpsepError):
    """A mixing matrix exceeds the configured condition-number cap."""


class ConfigError(WarpsepError):
    """Invalid configuration; message carries the offending field path."""


class SingularUnmixing(WarpsepError):
    """Unmixing matrix is singular (or all box candidates are)."""


class NumericalError(WarpsepError):
    """Numerical contract violated (non-PD covariance, large imaginary residue)."""


class DegenerateInput(WarpsepError):
    """Input data is rank deficient where full rank is required."""


class DegenerateReference(WarpsepError):
    """Reference source has zero energy."""


class SingularMatrix(WarpsepError):
    """Matrix inversion required but the matrix is singular."""


class EvalError(WarpsepError):
    """Evaluation inputs are inconsistent (mismatched lengths, missing files)."""
