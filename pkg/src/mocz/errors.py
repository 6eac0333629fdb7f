"""Exception types shared across the package."""


class MoczError(Exception):
    """Base class for all package errors."""


class RootFindingFailed(MoczError):
    """Root finding could not produce a usable zero set."""


class NonConvergence(RootFindingFailed):
    """Iterative root finder hit its iteration cap or residual check."""


class DegenerateLeading(RootFindingFailed):
    """Leading coefficient is too small; the polynomial degree collapses."""


class LengthMismatch(MoczError):
    """Bit word length does not match the codebook size."""


class NotPositiveDefinite(MoczError):
    """A matrix expected to be Hermitian positive definite is not."""


class SearchBudgetExceeded(MoczError):
    """Exhaustive codeword search would exceed the allowed budget."""


class SpectralZero(MoczError):
    """A Fourier bin used as a divisor fell below the safety threshold."""


class EtaTooLarge(MoczError):
    """The side-lobe level is too large for the simplified noise bound."""


class DeltaTooLarge(MoczError):
    """Perturbation ball radius exceeds half the minimal zero distance."""


class RadiusBelowOne(MoczError):
    """All zeros lie inside the unit circle, outside the bound's hypothesis."""


class BoundsDomainError(MoczError):
    """Inputs fall outside the domain of a closed-form bound."""


class UnderdeterminedEstimate(MoczError):
    """Pilot system is rank deficient; channel estimate is not unique."""


class ConfigError(MoczError):
    """Experiment configuration is invalid."""
