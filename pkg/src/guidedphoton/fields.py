"""Analytic TE_n0 fields, their zigzag plane-wave decomposition, and grid
residuals against the Dirac-like equation and the divergence constraints.

Fields are analytic signals ``~ exp[-i(omega t - k3 x3)]``; the physical field
is the real part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .minkowski import FourVector, minkowski_dot
from .modes import ModeIndex, WaveguideSpec, dispersion_omega
from .spinor import assemble_spinor, beta, slash

MIN_GRID = 8


@dataclass(frozen=True)
class FieldSample:
    E: np.ndarray
    B: np.ndarray
    position: tuple[float, float, float, float]

    def spinor(self) -> np.ndarray:
        return assemble_spinor(self.E, self.B)


@dataclass(frozen=True)
class PlaneWaveComponent:
    """One TEM wave ``(E0, B0) exp[-i(omega t - k.x)]`` with ``B0 = k x E0 / omega``."""

    wavevector: np.ndarray
    polarization: np.ndarray
    amplitude: complex = 1.0

    @property
    def omega(self) -> float:
        return float(np.linalg.norm(self.wavevector))

    @property
    def magnetic(self) -> np.ndarray:
        return np.cross(self.wavevector, self.polarization) / self.omega

    @property
    def four_momentum(self) -> FourVector:
        return FourVector(self.omega, *self.wavevector)

    def spinor_amplitude(self) -> np.ndarray:
        return self.amplitude * assemble_spinor(self.polarization, self.magnetic)

    def phase(self, t, x1, x2, x3):
        k = self.wavevector
        return np.exp(-1j * (self.omega * t - k[0] * x1 - k[1] * x2 - k[2] * x3))

    def field(self, t, x) -> FieldSample:
        x = np.asarray(x, dtype=float)
        ph = self.amplitude * self.phase(t, *x)
        return FieldSample(ph * self.polarization, ph * self.magnetic, (t, *x))

    def axial_profile(self, t, x3):
        """``phi(t, x3)``: the spinor with the cross-section phase removed."""
        k = self.wavevector
        ph = np.exp(-1j * (self.omega * t - k[2] * x3))
        return np.multiply.outer(self.spinor_amplitude(), ph)


def _require_te_n0(mode: ModeIndex):
    if mode.family != "TE" or mode.s != 0:
        raise DomainError(f"only TE_n0 fields are constructed, got {mode.family}_{mode.n}{mode.s}")


def te_mode_field(guide: WaveguideSpec, mode: ModeIndex, k3: float, t, x, E0: complex = 1.0) -> FieldSample:
    """TE_n0 field of a hollow guide at ``(t, x)``; ``x`` may carry trailing
    grid axes (shape ``(3, ...)``)."""
    _require_te_n0(mode)
    if not guide.hollow:
        raise DomainError("te_mode_field models a hollow guide only")
    k1 = mode.n * math.pi / guide.b1
    omega = dispersion_omega(k1, k3)
    x1, x2, x3 = (np.asarray(c, dtype=float) for c in x)
    carrier = E0 * np.exp(-1j * (omega * t - k3 * x3))
    sin_part = np.sin(k1 * x1) * carrier
    cos_part = np.cos(k1 * x1) * carrier
    zero = np.zeros_like(sin_part * x2)
    E = np.stack([zero, sin_part + zero, zero])
    B = np.stack([-(k3 / omega) * sin_part + zero, zero, -1j * (k1 / omega) * cos_part + zero])
    return FieldSample(E, B, (t, x1, x2, x3))


def zigzag_decompose(guide: WaveguideSpec, mode: ModeIndex, k3: float, E0: complex = 1.0):
    """Two TEM waves with transverse wavenumbers ``+k1`` and ``-k1`` whose sum
    is the TE_n0 mode; amplitudes ``+-E0/(2i)``."""
    _require_te_n0(mode)
    k1 = mode.n * math.pi / guide.b1
    pol = np.array([0.0, 1.0, 0.0])
    half = E0 / 2j
    plus = PlaneWaveComponent(np.array([k1, 0.0, k3]), pol, half)
    minus = PlaneWaveComponent(np.array([-k1, 0.0, k3]), pol, -half)
    return plus, minus


def branch_dirac_residual(component: PlaneWaveComponent) -> float:
    """Max-norm of ``slash((omega, k)) psi`` for the component's spinor."""
    residual = slash(component.four_momentum) @ component.spinor_amplitude()
    return float(np.max(np.abs(residual)))


def factorization_check(component: PlaneWaveComponent, points) -> float:
    """Worst deviation of ``psi(t, x)`` from ``phi(t, x3) exp(-i p_T.x_T)``.

    ``points`` is an array of rows ``(t, x1, x2, x3)``. The contraction
    ``p_T.x_T`` uses the Minkowski metric with lower-index vectors.
    """
    k = component.wavevector
    p_T = FourVector(0.0, k[0], k[1], 0.0)
    worst = 0.0
    for t, x1, x2, x3 in np.atleast_2d(points):
        full = component.spinor_amplitude() * component.phase(t, x1, x2, x3)
        transverse = np.exp(-1j * minkowski_dot(p_T, (0.0, x1, x2, 0.0)))
        factored = component.axial_profile(t, x3) * transverse
        worst = max(worst, float(np.max(np.abs(full - factored))))
    return worst


@dataclass
class FieldGrid3D:
    """Spinor samples on ``[0, b1] x [0, b2] x [0, period)`` at time ``t``.

    ``psi`` has shape ``(6, n1, n2, n3)``; axes 1 and 2 include both walls,
    axis 3 is periodic.
    """

    psi: np.ndarray
    spacing: tuple[float, float, float]
    t: float

    def __post_init__(self):
        if self.psi.ndim != 4 or self.psi.shape[0] != 6:
            raise DomainError("psi must have shape (6, n1, n2, n3)")
        if min(self.psi.shape[1:]) < MIN_GRID:
            raise DomainError(f"grid needs at least {MIN_GRID} points per axis, got {self.psi.shape[1:]}")


def grid_axes(guide: WaveguideSpec, period: float, n: int):
    x1 = np.linspace(0.0, guide.b1, n)
    x2 = np.linspace(0.0, guide.b2, n)
    x3 = np.arange(n) * (period / n)
    return x1, x2, x3


def sample_grid(field_fn, guide: WaveguideSpec, period: float, n: int, t: float) -> FieldGrid3D:
    """Evaluate ``field_fn(t, (x1, x2, x3)) -> FieldSample`` on an ``n^3`` grid."""
    if n < MIN_GRID:
        raise DomainError(f"grid needs at least {MIN_GRID} points per axis, got {n}")
    x1, x2, x3 = grid_axes(guide, period, n)
    mesh = np.meshgrid(x1, x2, x3, indexing="ij")
    sample = field_fn(t, mesh)
    psi = assemble_spinor(sample.E, sample.B)
    spacing = (x1[1] - x1[0], x2[1] - x2[0], x3[1] - x3[0])
    return FieldGrid3D(psi, spacing, t)


def te_mode_grid(guide, mode, k3, n, t, E0=1.0) -> FieldGrid3D:
    if not k3 > 0:
        raise DomainError("grid sampling needs k3 > 0 to fix the axial period")
    period = 2 * math.pi / k3
    return sample_grid(lambda tt, x: te_mode_field(guide, mode, k3, tt, x, E0), guide, period, n, t)


def _gradient(psi: np.ndarray, spacing):
    """Central differences; interior along axes 1, 2 and periodic along axis 3.

    Returns derivatives on the interior block ``[1:-1, 1:-1, :]``.
    """
    h1, h2, h3 = spacing
    d1 = (psi[:, 2:, 1:-1, :] - psi[:, :-2, 1:-1, :]) / (2 * h1)
    d2 = (psi[:, 1:-1, 2:, :] - psi[:, 1:-1, :-2, :]) / (2 * h2)
    core = psi[:, 1:-1, 1:-1, :]
    d3 = (np.roll(core, -1, axis=3) - np.roll(core, 1, axis=3)) / (2 * h3)
    return d1, d2, d3


def _apply_hamiltonian(psi: np.ndarray, spacing) -> np.ndarray:
    """``-i beta_0 (beta . grad) psi`` on the interior block."""
    grads = _gradient(psi, spacing)
    out = np.zeros_like(grads[0])
    for j, d in enumerate(grads, start=1):
        m = -1j * beta(0) @ beta(j)
        out += np.einsum("ab,b...->a...", m, d)
    return out


def dirac_residual(before: FieldGrid3D, after: FieldGrid3D) -> float:
    """Max over interior points of ``|i d_t psi - H psi|`` at the midpoint time.

    The time derivative is the difference of the two snapshots; the spatial
    term is the average of ``H`` over both, so the stencil is second order in
    space and time.
    """
    dt = after.t - before.t
    if dt <= 0:
        raise DomainError("snapshots must be ordered in time")
    if before.psi.shape != after.psi.shape:
        raise DomainError("snapshots must share a grid")
    interior = (slice(None), slice(1, -1), slice(1, -1), slice(None))
    dpsi = (after.psi[interior] - before.psi[interior]) / dt
    h_psi = 0.5 * (_apply_hamiltonian(before.psi, before.spacing) + _apply_hamiltonian(after.psi, after.spacing))
    residual = 1j * dpsi - h_psi
    return float(np.max(np.sqrt(np.sum(np.abs(residual) ** 2, axis=0))))


def transversality_residual(grid: FieldGrid3D) -> float:
    """Max over interior points of ``|div E| + |div B|``."""
    d1, d2, d3 = _gradient(grid.psi, grid.spacing)
    root2 = math.sqrt(2.0)
    div_e = root2 * (d1[0] + d2[1] + d3[2])
    div_b = root2 * (d1[3] + d2[4] + d3[5]) / 1j
    return float(np.max(np.abs(div_e) + np.abs(div_b)))


def dirac_snapshot_pair(field_fn, guide, period, n, t=0.0):
    """Two snapshots at ``t -+ dt/2`` with ``dt = min(h) / 4``."""
    x1, x2, x3 = grid_axes(guide, period, n)
    h = min(x1[1] - x1[0], x2[1] - x2[0], x3[1] - x3[0])
    dt = h / 4
    return (
        sample_grid(field_fn, guide, period, n, t - dt / 2),
        sample_grid(field_fn, guide, period, n, t + dt / 2),
    )


def convergence_order(errors, refinement: float = 2.0) -> np.ndarray:
    """Observed orders between successive refinements."""
    errors = np.asarray(errors, dtype=float)
    return np.log(errors[:-1] / errors[1:]) / math.log(refinement)


def cross_section_energy(guide, mode, k3, t, x3, n: int = 257) -> float:
    """``integral psi^dagger psi dx1 dx2`` over the cross-section at fixed ``(t, x3)``."""
    from scipy.integrate import simpson

    x1 = np.linspace(0.0, guide.b1, n)
    x2 = np.linspace(0.0, guide.b2, n)
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    sample = te_mode_field(guide, mode, k3, t, (X1, X2, np.full_like(X1, x3)))
    psi = assemble_spinor(sample.E, sample.B)
    density = np.sum(np.abs(psi) ** 2, axis=0)
    return float(simpson(simpson(density, x=x2, axis=1), x=x1))
