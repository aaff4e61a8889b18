"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """Emitter count exceeds the dense-matrix guard."""


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details if details is not None else []


class NumericalError(RuntimeError):
    """Numerical failure during an experiment (CLI exit code 3)."""


class IntegrationError(NumericalError):
    """ODE integrator failed; carries the time stamp of the failure."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DegenerateSteadyStateError(NumericalError):
    """Lindblad generator has a (numerically) degenerate null space."""


class NormalizationError(NumericalError):
    """A correlation histogram cannot be normalized (no flux / no side peak)."""
