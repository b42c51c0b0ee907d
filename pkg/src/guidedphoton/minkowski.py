"""Four-vectors under the metric diag(1, -1, -1, -1), axial boosts, and the
orthogonal split of a guided photon's light-like momentum.

Natural units (hbar = c = 1). Every public vector is stored with lower
indices, ``(t, x1, x2, x3)`` for positions and ``(omega, k1, k2, k3)`` for
momenta, so ``minkowski_dot(k, x)`` is the plane-wave phase ``omega t - k.x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True, slots=True)
class FourVector:
    t: float
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        for name in ("t", "x1", "x2", "x3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"four-vector component {name} is not finite: {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, values) -> FourVector:
        t, x1, x2, x3 = (float(v) for v in values)
        return cls(t, x1, x2, x3)

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x1, self.x2, self.x3])

    def __iter__(self):
        return iter((self.t, self.x1, self.x2, self.x3))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.as_array(), dtype=dtype)

    def __add__(self, other: FourVector) -> FourVector:
        return FourVector.from_array(self.as_array() + np.asarray(other))

    def __sub__(self, other: FourVector) -> FourVector:
        return FourVector.from_array(self.as_array() - np.asarray(other))

    def __mul__(self, scalar: float) -> FourVector:
        return FourVector.from_array(self.as_array() * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> FourVector:
        return self * -1.0


class Causal(str, Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


def minkowski_dot(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


def euclidean_scale(a) -> float:
    """Sum of squared components; the natural size against which a Minkowski
    norm is judged to be zero."""
    a = np.asarray(a, dtype=float)
    return float(np.dot(a, a))


def classify(a, tol: float | None = None) -> Causal:
    """Causal character of ``a``.

    With ``tol=None`` the null band is ``1e-9 * (a0^2 + |a|^2)``, i.e. relative
    to the vector's own size.
    """
    if tol is None:
        tol = 1e-9 * euclidean_scale(a)
    elif tol <= 0:
        raise DomainError("classify tolerance must be positive")
    norm = minkowski_dot(a, a)
    if abs(norm) <= tol:
        return Causal.LIGHTLIKE
    return Causal.TIMELIKE if norm > 0 else Causal.SPACELIKE


def boost_axial(a, speed: float) -> FourVector:
    """Boost along the guide (x3) axis.

    A vector at rest acquires velocity ``+speed``: ``(m,0,0,0)`` maps to
    ``(gamma m, 0, 0, gamma speed m)``.
    """
    if not abs(speed) < 1.0:
        raise DomainError(f"superluminal boost: |speed| = {abs(speed)} >= 1")
    t, x1, x2, x3 = (float(v) for v in np.asarray(a, dtype=float))
    gamma = 1.0 / math.sqrt(1.0 - speed * speed)
    return FourVector(gamma * (t + speed * x3), x1, x2, gamma * (x3 + speed * t))


@dataclass(frozen=True, slots=True)
class GuidedDecomposition:
    """``k = p_T + p_L`` with ``p_T = mass * eta`` frozen in the cross-section
    and ``p_L`` travelling along the guide."""

    k: FourVector
    p_T: FourVector
    p_L: FourVector
    eta: FourVector
    mass: float

    @property
    def energy(self) -> float:
        return self.p_L.t

    @property
    def k3(self) -> float:
        return self.p_L.x3


def decompose_guided(omega_c: float, k3: float, direction=(1.0, 0.0)) -> GuidedDecomposition:
    """Split the guided photon momentum for transverse wavenumber ``omega_c``.

    ``direction`` is the transverse orientation of ``k_perp`` in the (x1, x2)
    plane; the default puts it on axis 1 as for the lowest-order mode.
    """
    if not omega_c > 0:
        raise DomainError(f"omega_c must be positive, got {omega_c}")
    d = np.asarray(direction, dtype=float)
    length = math.hypot(d[0], d[1])
    if length == 0.0:
        raise DomainError("transverse direction must be nonzero")
    d = d / length
    energy = math.hypot(k3, omega_c)
    eta = FourVector(0.0, d[0], d[1], 0.0)
    p_T = FourVector(0.0, omega_c * d[0], omega_c * d[1], 0.0)
    p_L = FourVector(energy, 0.0, 0.0, k3)
    k = FourVector(energy, p_T.x1, p_T.x2, k3)
    return GuidedDecomposition(k=k, p_T=p_T, p_L=p_L, eta=eta, mass=float(omega_c))


def split_position(x) -> tuple[FourVector, FourVector]:
    """Return ``(x_T, x_L)``: the cross-section part and the (t, x3) part."""
    t, x1, x2, x3 = (float(v) for v in np.asarray(x, dtype=float))
    return FourVector(0.0, x1, x2, 0.0), FourVector(t, 0.0, 0.0, x3)


def phase_split_check(decomp: GuidedDecomposition, x) -> float:
    """``|k.x - (p_T.x_T + p_L.x_L)|`` for a position four-vector ``x``."""
    x_T, x_L = split_position(x)
    total = minkowski_dot(decomp.k, x)
    split = minkowski_dot(decomp.p_T, x_T) + minkowski_dot(decomp.p_L, x_L)
    return abs(total - split)
