"""Photons in a hollow rectangular waveguide treated as relativistic massive
particles: spinor algebra, mode kinematics, analytic fields, 1D dynamics and a
scenario runner."""

__version__ = "0.1.0"

from .errors import ConfigError, DetectionError, DomainError, GuidedPhotonError, NumericalError  # noqa: E402

__all__ = [
    "ConfigError",
    "DetectionError",
    "DomainError",
    "GuidedPhotonError",
    "NumericalError",
    "__version__",
]
