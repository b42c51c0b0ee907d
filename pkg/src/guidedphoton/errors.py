"""Exception hierarchy shared by the library modules and the scenario runner."""


class GuidedPhotonError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GuidedPhotonError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class NumericalError(GuidedPhotonError, ArithmeticError):
    """A numerical procedure failed (instability, degenerate resolution, ...)."""


class DetectionError(NumericalError):
    """A spectral or fitting procedure found no usable signal."""


class ConfigError(GuidedPhotonError, ValueError):
    """A scenario configuration is malformed or violates the schema."""

    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
