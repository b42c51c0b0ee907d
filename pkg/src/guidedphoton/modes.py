"""Rectangular waveguide mode catalogue and guided-photon kinematics.

Lengths are in units of the broad wall unless a caller says otherwise, and
frequencies/masses/inverse lengths share one unit (hbar = c = 1). A hollow
guide has effective rest mass equal to the cutoff; a lossless plasma fill of
frequency ``omega_p`` raises it to ``sqrt(omega_c^2 + omega_p^2)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

from .errors import DomainError
from .minkowski import GuidedDecomposition, decompose_guided


class DegenerateGuideWarning(UserWarning):
    """Square cross-section: the (n, s) and (s, n) cutoffs coincide."""


@dataclass(frozen=True)
class WaveguideSpec:
    b1: float = 1.0
    b2: float = 0.5
    plasma_frequency: float = 0.0

    def __post_init__(self):
        if not (self.b2 > 0 and self.b1 >= self.b2):
            raise DomainError(f"need b1 >= b2 > 0, got b1={self.b1}, b2={self.b2}")
        if self.plasma_frequency < 0:
            raise DomainError("plasma_frequency must be >= 0")
        if self.b1 == self.b2:
            warnings.warn("b1 == b2: square guide with degenerate modes", DegenerateGuideWarning, stacklevel=3)

    @property
    def hollow(self) -> bool:
        return self.plasma_frequency == 0.0


@dataclass(frozen=True)
class ModeIndex:
    n: int = 1
    s: int = 0
    family: Literal["TE", "TM"] = "TE"

    def __post_init__(self):
        if self.n < 1 or self.s < 0:
            raise DomainError(f"mode needs n >= 1 and s >= 0, got ({self.n}, {self.s})")
        if self.family not in ("TE", "TM"):
            raise DomainError(f"unknown mode family {self.family!r}")
        if self.family == "TM" and self.s < 1:
            raise DomainError("TM modes need s >= 1")


def transverse_wavenumbers(guide: WaveguideSpec, mode: ModeIndex) -> tuple[float, float]:
    return mode.n * math.pi / guide.b1, mode.s * math.pi / guide.b2


def cutoff_frequency(guide: WaveguideSpec, mode: ModeIndex) -> float:
    k1, k2 = transverse_wavenumbers(guide, mode)
    return math.hypot(k1, k2)


def effective_mass(guide: WaveguideSpec, mode: ModeIndex) -> float:
    return math.hypot(cutoff_frequency(guide, mode), guide.plasma_frequency)


def compton_wavelength(mass: float) -> float:
    if not mass > 0:
        raise DomainError(f"Compton wavelength needs mass > 0, got {mass}")
    return 1.0 / mass


def dispersion_omega(mass: float, k3: float) -> float:
    if mass < 0:
        raise DomainError("mass must be >= 0")
    return math.hypot(k3, mass)


def group_velocity(omega: float, omega_c: float) -> float:
    if not omega_c > 0:
        raise DomainError("omega_c must be positive")
    if omega < omega_c:
        raise DomainError(f"omega={omega} below cutoff {omega_c}: evanescent, use evanescent_kappa")
    ratio = omega_c / omega
    return math.sqrt((1.0 - ratio) * (1.0 + ratio))


def phase_velocity(omega: float, omega_c: float) -> float:
    if not omega_c > 0:
        raise DomainError("omega_c must be positive")
    if omega <= omega_c:
        raise DomainError(f"phase velocity undefined at or below cutoff (omega={omega})")
    return 1.0 / group_velocity(omega, omega_c)


def energy_from_velocity(mass: float, v_g: float) -> float:
    if not mass > 0:
        raise DomainError("mass must be positive")
    if not 0 <= v_g < 1:
        raise DomainError(f"group velocity must lie in [0, 1), got {v_g}")
    return mass / math.sqrt((1.0 - v_g) * (1.0 + v_g))


def evanescent_kappa(omega: float, omega_c: float) -> float:
    if not 0 <= omega < omega_c:
        raise DomainError(f"need 0 <= omega < omega_c, got omega={omega}, omega_c={omega_c}")
    return math.sqrt((omega_c - omega) * (omega_c + omega))


@dataclass(frozen=True)
class GuidedPhotonState:
    guide: WaveguideSpec
    mode: ModeIndex
    k3: float = 0.0

    def __post_init__(self):
        if self.k3 < 0:
            raise DomainError("k3 must be >= 0; negative axial momenta come from boosts")

    @property
    def mass(self) -> float:
        return effective_mass(self.guide, self.mode)

    @property
    def omega(self) -> float:
        return dispersion_omega(self.mass, self.k3)


def guided_four_momentum(state: GuidedPhotonState) -> GuidedDecomposition:
    """Momentum split for ``state``.

    ``p_T`` points along ``(k1, k2)``; its length is the effective mass, which
    for a hollow guide is exactly ``|(k1, k2)|``.
    """
    k1, k2 = transverse_wavenumbers(state.guide, state.mode)
    return decompose_guided(state.mass, state.k3, direction=(k1, k2))


def mode_table(guide: WaveguideSpec, n_max: int, s_max: int) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        for s in range(0, s_max + 1):
            mode = ModeIndex(n, s)
            mass = effective_mass(guide, mode)
            rows.append(
                {
                    "n": n,
                    "s": s,
                    "cutoff": cutoff_frequency(guide, mode),
                    "mass": mass,
                    "compton": compton_wavelength(mass),
                }
            )
    return rows
