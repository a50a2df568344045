"""Exception types shared across the workbench."""


class TwqkdError(Exception):
    """Base class for all workbench errors."""


class DomainError(TwqkdError, ValueError):
    """Argument outside the validity domain of a formula."""


class NonHermitianInput(TwqkdError, ValueError):
    """Matrix violates Hermitian symmetry beyond tolerance."""


class NegativeEigenvalue(TwqkdError, ValueError):
    """Spectrum contains an eigenvalue below the PSD tolerance."""


class NotPSD(TwqkdError, ValueError):
    """Matrix is not positive semidefinite within tolerance."""


class InfeasibleParameters(TwqkdError, ValueError):
    """Requested attack parameters admit no physical realization."""


class ConfigError(TwqkdError, ValueError):
    """Invalid simulation configuration."""


class InsufficientStatistics(TwqkdError, RuntimeError):
    """Report lacks the samples needed for an estimate."""


class LowerBoundRefused(TwqkdError, RuntimeError):
    """Refusing to compute a key rate from a lower bound on Eve's information."""


class NoFeasibleCandidate(TwqkdError, RuntimeError):
    """Attack search produced no candidate satisfying the constraints."""
