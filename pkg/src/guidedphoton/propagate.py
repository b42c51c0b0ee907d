"""One-dimensional dynamics of a photon guided along r = x3.

The spinor equation is ``i d_t phi = H phi`` with the plane-wave symbol

    H(k) = omega_c beta_0 beta_1 + k beta_0 beta_3,

the free-photon Hamiltonian restricted to the wavevector ``(omega_c, 0, k)``.
Its spectrum is ``{+E, +E, -E, -E, 0, 0}`` with ``E = sqrt(k^2 + omega_c^2)``;
the zero modes are longitudinal and unphysical. Because ``H^3 = E^2 H``,
``exp(-i H T) = I - i sin(ET)/E H + (cos(ET) - 1)/E^2 H^2`` exactly.

Also here: the scalar Klein-Gordon evolution, the axial Helmholtz problem
(transfer matrices and evanescent decay), and the packet observables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import DetectionError, DomainError, NumericalError
from .spinor import beta, omega_symbol

BETA01 = beta(0) @ beta(1)
BETA03 = beta(0) @ beta(3)
TE_POLARIZATION = np.array([0.0, 1.0, 0.0])

Branch = Literal["plus", "minus", "both"]


# ---------------------------------------------------------------- grids/fields


@dataclass(frozen=True)
class Grid1D:
    length: float
    points: int

    def __post_init__(self):
        n = self.points
        if n < 64 or n & (n - 1):
            raise DomainError(f"grid points must be a power of two >= 64, got {n}")
        if not self.length > 0:
            raise DomainError("grid length must be positive")

    @property
    def spacing(self) -> float:
        return self.length / self.points

    @property
    def r(self) -> np.ndarray:
        return np.arange(self.points) * self.spacing

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.points, d=self.spacing)


@dataclass
class SpinorField1D:
    grid: Grid1D
    values: np.ndarray  # (6, N)
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (6, self.grid.points):
            raise DomainError(f"spinor field must have shape (6, {self.grid.points})")
        if not np.all(np.isfinite(self.values)):
            raise NumericalError("spinor field has non-finite entries")

    def density(self) -> np.ndarray:
        return np.sum(np.abs(self.values) ** 2, axis=0)

    def spectrum(self) -> np.ndarray:
        return np.fft.fft(self.values, axis=-1)

    def with_spectrum(self, spec: np.ndarray, time: float) -> SpinorField1D:
        return SpinorField1D(self.grid, np.fft.ifft(spec, axis=-1), time)


@dataclass
class ScalarField1D:
    grid: Grid1D
    phi: np.ndarray
    dphi: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=complex)
        self.dphi = np.asarray(self.dphi, dtype=complex)
        if self.phi.shape != (self.grid.points,) or self.dphi.shape != self.phi.shape:
            raise DomainError("scalar field arrays must match the grid")

    def density(self) -> np.ndarray:
        return np.abs(self.phi) ** 2


# ------------------------------------------------------------ spectral algebra


def guided_hamiltonian_symbol(k, omega_c: float) -> np.ndarray:
    """``H(k)``; vectorised over ``k`` (result shape ``k.shape + (6, 6)``).

    ``omega_c = 0`` is accepted as the massless limit.
    """
    if omega_c < 0:
        raise DomainError("omega_c must be >= 0")
    k = np.asarray(k, dtype=float)
    return omega_c * BETA01 + k[..., None, None] * BETA03


def branch_energy(k, omega_c: float) -> np.ndarray:
    return np.hypot(k, omega_c)


def _unit_wavevector(k, omega_c: float) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    energy = np.hypot(k, omega_c)
    safe = np.where(energy > 0, energy, 1.0)
    kx = np.where(energy > 0, omega_c / safe, 1.0)
    kz = np.where(energy > 0, k / safe, 0.0)
    return np.stack([kx, np.zeros_like(kx), kz], axis=-1)


def branch_template(k, omega_c: float, sign: int, polarization=TE_POLARIZATION) -> np.ndarray:
    """Closed-form unit eigenvector ``(e, sign i K^ x e)/sqrt(2)`` of ``H(k)``
    with eigenvalue ``sign E``; ``e`` is the polarization made transverse."""
    khat = _unit_wavevector(k, omega_c)
    e = np.broadcast_to(np.asarray(polarization, dtype=float), khat.shape)
    e = e - np.sum(e * khat, axis=-1, keepdims=True) * khat
    norm = np.linalg.norm(e, axis=-1, keepdims=True)
    if np.any(norm < 1e-8):
        raise DomainError(f"polarization {polarization} is parallel to the wavevector for some k")
    e = e / norm
    b = np.cross(khat, e)
    return np.concatenate([e, sign * 1j * b], axis=-1) / math.sqrt(2.0)


def branch_eigenvectors(k, omega_c: float, sign: int, polarization=TE_POLARIZATION) -> np.ndarray:
    """Eigenvector of ``H(k)`` on the ``sign E`` branch, shape ``k.shape + (6,)``.

    The doubly degenerate eigenspace is obtained by diagonalisation; the
    representative is the normalised projection of :func:`branch_template`
    onto it, which fixes polarization and phase deterministically.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    template = branch_template(k, omega_c, sign, polarization)
    energy = branch_energy(k, omega_c)
    w, v = np.linalg.eigh(guided_hamiltonian_symbol(k, omega_c))
    target = sign * energy
    mask = np.abs(w - target[:, None]) <= 1e-9 * np.maximum(energy, 1.0)[:, None]
    mask &= (energy > 0)[:, None]
    coeff = np.einsum("nab,na->nb", v.conj(), template) * mask
    projected = np.einsum("nab,nb->na", v, coeff)
    norms = np.linalg.norm(projected, axis=-1)
    massless_rest = energy == 0
    if np.any((norms < 0.5) & ~massless_rest):
        bad = k[(norms < 0.5) & ~massless_rest]
        raise NumericalError(f"branch resolution failed at k={bad[:4]} (omega_c={omega_c})")
    projected[massless_rest] = template[massless_rest]
    norms[massless_rest] = 1.0
    return projected / norms[:, None]


def physical_branch_projector(k: float, omega_c: float, tol: float = 1e-10) -> np.ndarray:
    """Orthogonal projector onto the ``+-E`` eigenvectors of ``H(k)`` that
    satisfy the transversality constraint for wavevector ``(omega_c, 0, k)``."""
    if not omega_c > 0:
        raise DomainError("omega_c must be positive")
    energy = math.hypot(k, omega_c)
    h = guided_hamiltonian_symbol(k, omega_c)
    w, v = np.linalg.eigh(h)
    keep = np.abs(np.abs(w) - energy) <= tol * energy
    basis = v[:, keep]
    constraint = omega_symbol((omega_c, 0.0, k)) @ basis
    violation = float(np.max(np.abs(constraint))) if basis.size else math.inf
    if basis.shape[1] != 4 or violation > tol * energy**2:
        raise NumericalError(
            f"physical subspace resolution failed: eigenvalues={np.round(w, 12)}, "
            f"kept={basis.shape[1]}, constraint violation={violation:.3e}"
        )
    return basis @ basis.conj().T


def physical_projector_closed_form(k, omega_c: float) -> np.ndarray:
    """``I - Omega(K)/|K|^2``, vectorised over ``k``."""
    khat = _unit_wavevector(k, omega_c)
    outer = khat[..., :, None] * khat[..., None, :]
    eye = np.eye(6, dtype=complex)
    proj = np.broadcast_to(eye, khat.shape[:-1] + (6, 6)).copy()
    proj[..., :3, :3] -= outer
    proj[..., 3:, 3:] -= outer
    return proj


def _propagator_terms(k, omega_c, spec):
    """``H phi_hat`` and ``H^2 phi_hat`` per Fourier mode; ``spec`` is (6, N)."""
    h = guided_hamiltonian_symbol(k, omega_c)
    h1 = np.einsum("nab,bn->an", h, spec)
    h2 = np.einsum("nab,bn->an", h, h1)
    return h1, h2


def _propagator_coefficients(energy, t):
    """``sin(Et)/E`` and ``(cos(Et) - 1)/E^2`` with their ``E -> 0`` limits."""
    x = energy * t
    s = t * np.sinc(x / np.pi)
    half = t * np.sinc(x / (2 * np.pi))
    c = -0.5 * half**2
    return s, c


# ------------------------------------------------------------------ evolution


def init_gaussian_packet(
    grid: Grid1D,
    k0: float,
    sigma: float,
    omega_c: float,
    branch: Branch = "plus",
    center: float | None = None,
    polarization=TE_POLARIZATION,
) -> SpinorField1D:
    """Unit-norm packet with Fourier envelope ``exp(-(k-k0)^2 sigma^2 / 2)``
    placed at ``center`` (default ``L/2``) on the chosen branch(es)."""
    h = grid.spacing
    if sigma < 4 * h:
        raise DomainError(f"packet unresolved: sigma={sigma} < 4h={4 * h}")
    if abs(k0) > math.pi / (2 * h):
        raise DomainError(f"|k0|={abs(k0)} exceeds half the Nyquist wavenumber {math.pi / (2 * h)}")
    if center is None:
        center = grid.length / 2
    k = grid.k
    envelope = np.exp(-0.5 * ((k - k0) * sigma) ** 2 - 1j * k * center)
    if branch == "plus":
        u = branch_eigenvectors(k, omega_c, +1, polarization)
    elif branch == "minus":
        u = branch_eigenvectors(k, omega_c, -1, polarization)
    elif branch == "both":
        u = (branch_eigenvectors(k, omega_c, +1, polarization) + branch_eigenvectors(k, omega_c, -1, polarization)) / math.sqrt(2)
    else:
        raise DomainError(f"unknown branch {branch!r}")
    spec = (u * envelope[:, None]).T
    if omega_c > 0:
        spec = np.einsum("nab,bn->an", physical_projector_closed_form(k, omega_c), spec)
    packet = SpinorField1D(grid, np.fft.ifft(spec, axis=-1), 0.0)
    packet.values /= math.sqrt(measure_norm(packet))
    return packet


def evolve_spectral(field: SpinorField1D, omega_c: float, T: float) -> SpinorField1D:
    """Exact evolution by ``exp(-i H(k) T)`` in every Fourier mode."""
    if T < 0:
        raise DomainError("evolution time must be >= 0")
    k = field.grid.k
    spec = field.spectrum()
    h1, h2 = _propagator_terms(k, omega_c, spec)
    s, c = _propagator_coefficients(branch_energy(k, omega_c), T)
    return field.with_spectrum(spec - 1j * s * h1 + c * h2, field.time + T)


def apply_hamiltonian(field: SpinorField1D, omega_c: float) -> np.ndarray:
    spec = field.spectrum()
    h1, _ = _propagator_terms(field.grid.k, omega_c, spec)
    return np.fft.ifft(h1, axis=-1)


def evolve_rk4(field: SpinorField1D, omega_c: float, dt: float, steps: int) -> SpinorField1D:
    """Classical fourth-order Runge-Kutta with the spectral ``H``."""
    h = field.grid.spacing
    if not 0 < dt <= 0.5 * h:
        raise DomainError(f"dt={dt} outside (0, h/2] with h={h}")
    hk = guided_hamiltonian_symbol(field.grid.k, omega_c)

    def rhs(values):
        spec = np.fft.fft(values, axis=-1)
        return -1j * np.fft.ifft(np.einsum("nab,bn->an", hk, spec), axis=-1)

    y = field.values.copy()
    norm0 = np.sum(np.abs(y) ** 2)
    for _ in range(steps):
        a = rhs(y)
        b = rhs(y + 0.5 * dt * a)
        c = rhs(y + 0.5 * dt * b)
        d = rhs(y + dt * c)
        y = y + (dt / 6.0) * (a + 2 * b + 2 * c + d)
    norm1 = np.sum(np.abs(y) ** 2)
    if not np.isfinite(norm1) or (norm0 > 0 and norm1 > 1.1 * norm0):
        raise NumericalError(f"RK4 unstable: norm grew from {norm0:.6g} to {norm1:.6g}")
    return SpinorField1D(field.grid, y, field.time + dt * steps)


def init_kg_packet(grid: Grid1D, k0: float, sigma: float, mass: float, center: float | None = None) -> ScalarField1D:
    """Positive-frequency Klein-Gordon packet (``d_t phi_hat = -i w(k) phi_hat``)."""
    if center is None:
        center = grid.length / 2
    k = grid.k
    spec = np.exp(-0.5 * ((k - k0) * sigma) ** 2 - 1j * k * center)
    w = np.hypot(k, mass)
    phi = np.fft.ifft(spec)
    dphi = np.fft.ifft(-1j * w * spec)
    scale = math.sqrt(grid.spacing * np.sum(np.abs(phi) ** 2))
    return ScalarField1D(grid, phi / scale, dphi / scale)


def evolve_klein_gordon(field: ScalarField1D, mass: float, T: float) -> ScalarField1D:
    """Exact per-mode rotation of ``(phi_hat, d_t phi_hat)`` with ``w = sqrt(k^2 + m^2)``."""
    if T < 0:
        raise DomainError("evolution time must be >= 0")
    w = np.hypot(field.grid.k, mass)
    p = np.fft.fft(field.phi)
    q = np.fft.fft(field.dphi)
    cos = np.cos(w * T)
    sin_over_w = T * np.sinc(w * T / np.pi)
    p_new = cos * p + sin_over_w * q
    q_new = -(w**2) * sin_over_w * p + cos * q
    return ScalarField1D(field.grid, np.fft.ifft(p_new), np.fft.ifft(q_new), field.time + T)


def klein_gordon_energy(field: ScalarField1D, mass: float) -> float:
    w = np.hypot(field.grid.k, mass)
    p = np.fft.fft(field.phi)
    q = np.fft.fft(field.dphi)
    return float(np.sum(np.abs(q) ** 2 + w**2 * np.abs(p) ** 2) * field.grid.spacing / field.grid.points)


# ---------------------------------------------------------------- observables


class WrapAroundWarning(UserWarning):
    """The packet is too wide for its centroid to be unambiguous on the ring."""


def measure_norm(field) -> float:
    return float(field.grid.spacing * np.sum(field.density()))


def _centred_positions(field):
    """Density, and positions unwrapped into ``[c - L/2, c + L/2)`` around the
    circular mean ``c``."""
    grid = field.grid
    rho = field.density()
    total = np.sum(rho)
    if total == 0:
        raise DomainError("centroid of a zero field is undefined")
    phase = np.sum(rho * np.exp(2j * np.pi * grid.r / grid.length))
    center = (np.angle(phase) % (2 * np.pi)) * grid.length / (2 * np.pi)
    shifted = (grid.r - center + grid.length / 2) % grid.length - grid.length / 2
    return rho / total, center + shifted


def measure_centroid(field, check_wrap: bool = True) -> float:
    """First moment of the density about its circular mean, in ``[0, L)``.

    Warns with :class:`WrapAroundWarning` when the cut opposite the packet lies
    within five RMS widths of the centroid.
    """
    weights, x = _centred_positions(field)
    mean = float(np.sum(weights * x))
    if check_wrap:
        width = math.sqrt(max(float(np.sum(weights * (x - mean) ** 2)), 0.0))
        if field.grid.length / 2 < 5 * width:
            import warnings

            warnings.warn(
                f"packet width {width:.4g} too large for ring of length {field.grid.length:.4g}",
                WrapAroundWarning,
                stacklevel=2,
            )
    return mean % field.grid.length


def measure_width(field) -> float:
    weights, x = _centred_positions(field)
    mean = np.sum(weights * x)
    return float(math.sqrt(np.sum(weights * (x - mean) ** 2)))


@dataclass
class Trajectory:
    t: np.ndarray
    centroid: np.ndarray
    norm: np.ndarray
    width: np.ndarray = field(default=None)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        if self.t.size > 1 and np.any(np.diff(self.t) <= 0):
            raise DomainError("trajectory times must be strictly increasing")
        self.centroid = np.asarray(self.centroid, dtype=float)
        self.norm = np.asarray(self.norm, dtype=float)
        if self.width is None:
            self.width = np.full_like(self.t, np.nan)
        self.width = np.asarray(self.width, dtype=float)

    @property
    def variance(self) -> np.ndarray:
        return self.width**2

    @property
    def sample_dt(self) -> float:
        return float(self.t[1] - self.t[0])


def record_trajectory(field: SpinorField1D, omega_c: float, duration: float, sample_dt: float) -> Trajectory:
    """Sample centroid, norm and width at ``0, dt, 2 dt, ...`` up to ``duration``.

    Each sample is evolved exactly from the initial field, so no error
    accumulates between samples. Centroids are unwrapped across the ring seam.
    """
    count = int(math.floor(duration / sample_dt + 1e-9)) + 1
    times = np.arange(count) * sample_dt
    k = field.grid.k
    spec = field.spectrum()
    h1, h2 = _propagator_terms(k, omega_c, spec)
    energy = branch_energy(k, omega_c)
    centroid, norm, width = [], [], []
    for t in times:
        s, c = _propagator_coefficients(energy, t)
        snap = field.with_spectrum(spec - 1j * s * h1 + c * h2, field.time + t)
        centroid.append(measure_centroid(snap, check_wrap=False))
        norm.append(measure_norm(snap))
        width.append(measure_width(snap))
    L = field.grid.length
    unwrapped = np.unwrap(np.asarray(centroid) * (2 * np.pi / L)) * (L / (2 * np.pi))
    return Trajectory(times + field.time, unwrapped, np.array(norm), np.array(width))


def fit_group_velocity(traj: Trajectory, window: tuple[float, float] | None = None) -> float:
    """Least-squares slope of centroid against time inside ``window``."""
    t, x = traj.t, traj.centroid
    if window is not None:
        t_a, t_b = window
        if t_a < t[0] or t_b > t[-1] or t_b <= t_a:
            raise DomainError(f"window {window} not inside trajectory [{t[0]}, {t[-1]}]")
        sel = (t >= t_a) & (t <= t_b)
        t, x = t[sel], x[sel]
    if t.size < 10:
        raise DetectionError(f"need at least 10 samples to fit a velocity, got {t.size}")
    slope, _ = np.polyfit(t, x, 1)
    return float(slope)


@dataclass(frozen=True)
class OscillationPeak:
    frequency: float  # angular
    amplitude: float  # in position units
    reference: float  # mean packet width


DETREND_DEGREE = {"centroid": 1, "width": 1, "variance": 2}


def oscillation_spectrum(traj: Trajectory, observable: str = "centroid", pad: int = 16):
    """Angular frequencies and amplitudes of the detrended observable.

    The centroid loses its best-fit line; the variance, which grows
    quadratically under free spreading, loses its best-fit parabola. A Hann
    window is applied and amplitudes are rescaled so that ``a cos(w t)`` shows
    a peak of height ``a``.
    """
    series = getattr(traj, observable)
    t = traj.t
    n = t.size
    dt = traj.sample_dt
    if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=0):
        raise DomainError("trajectory sampling must be uniform")
    trend = np.polyfit(t, series, DETREND_DEGREE[observable])
    detrended = series - np.polyval(trend, t)
    window = np.hanning(n)
    spectrum = np.fft.rfft(detrended * window, n=pad * n)
    amplitude = 2 * np.abs(spectrum) / np.sum(window)
    omega = 2 * np.pi * np.fft.rfftfreq(pad * n, d=dt)
    return omega, amplitude


def dominant_oscillation(traj: Trajectory, observable: str = "centroid", rel_floor: float = 1e-6, pad: int = 16) -> OscillationPeak:
    omega, amplitude = oscillation_spectrum(traj, observable, pad)
    duration = traj.t[-1] - traj.t[0]
    # skip the drift lobe: below two native bins
    cut = omega > 2 * (2 * np.pi / duration)
    if not np.any(cut):
        raise DetectionError("trajectory too short for a spectral peak")
    idx = np.flatnonzero(cut)[np.argmax(amplitude[cut])]
    freq = omega[idx]
    if 0 < idx < omega.size - 1:
        a, b, c = np.log(amplitude[idx - 1 : idx + 2] + 1e-300)
        denom = a - 2 * b + c
        if denom < 0:
            freq += 0.5 * (a - c) / denom * (omega[1] - omega[0])
    reference = float(np.nanmean(traj.variance if observable == "variance" else traj.width))
    peak = OscillationPeak(float(freq), float(amplitude[idx]), reference)
    if not np.isfinite(reference) or peak.amplitude < rel_floor * reference:
        raise DetectionError(
            f"no {observable} oscillation above {rel_floor:g} of the packet width "
            f"(peak amplitude {peak.amplitude:.3e} at omega={peak.frequency:.4g}, width {reference:.4g})"
        )
    return peak


def zitterbewegung_spectrum(traj: Trajectory, observable: str = "centroid") -> float:
    """Angular frequency of the dominant nonzero peak of the detrended centroid."""
    return dominant_oscillation(traj, observable).frequency


@dataclass(frozen=True)
class DispersionPoint:
    k: float
    omega: float


def extract_dispersion(history: Sequence[SpinorField1D], threshold: float = 1e-6):
    """Measured ``(k, omega)`` pairs from a 2D Fourier transform over ``(r, t)``.

    For each spatial wavenumber whose power exceeds ``threshold`` times the
    peak, the reported frequency is the strongest temporal bin. Returns the
    points and the frequency resolution ``2 pi / (n_t dt)``.
    """
    if len(history) < 64:
        raise DomainError(f"need at least 64 snapshots, got {len(history)}")
    times = np.array([f.time for f in history])
    dt = times[1] - times[0]
    if not np.allclose(np.diff(times), dt, rtol=1e-9, atol=1e-12):
        raise DomainError("snapshots must be uniformly spaced in time")
    stack = np.stack([f.values for f in history])  # (nt, 6, N)
    spatial = np.fft.fft(stack, axis=-1)
    # phases go as exp(-i omega t): the inverse transform puts +omega at +bin
    temporal = np.fft.ifft(spatial, axis=0)
    power = np.sum(np.abs(temporal) ** 2, axis=1)  # (nt, N)
    omega_axis = 2 * np.pi * np.fft.fftfreq(len(history), d=dt)
    k_axis = history[0].grid.k
    per_k = power.sum(axis=0)
    keep = per_k >= threshold * per_k.max()
    points = [
        DispersionPoint(float(k_axis[j]), float(omega_axis[np.argmax(power[:, j])]))
        for j in np.flatnonzero(keep)
    ]
    points.sort(key=lambda p: p.k)
    resolution = 2 * np.pi / (len(history) * dt)
    return points, resolution


# ------------------------------------------------------ Helmholtz / tunneling


@dataclass(frozen=True)
class BarrierProfile:
    """Piecewise-constant cutoff along r. The first and last segments are the
    semi-infinite leads; their lengths are ignored."""

    segments: tuple[tuple[float, float], ...]

    def __post_init__(self):
        segs = tuple((float(a), float(b)) for a, b in self.segments)
        if not segs:
            raise DomainError("profile needs at least one segment")
        if any(length <= 0 for length, _ in segs):
            raise DomainError("segment lengths must be positive")
        if any(cut < 0 for _, cut in segs):
            raise DomainError("segment cutoffs must be >= 0")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def single_barrier(cls, lead_cutoff: float, barrier_cutoff: float, length: float) -> BarrierProfile:
        return cls(((1.0, lead_cutoff), (length, barrier_cutoff), (1.0, lead_cutoff)))


@dataclass(frozen=True)
class Transmission:
    T: float
    R: float
    saturated: bool = False
    log_T: float = 0.0


LOG_UNDERFLOW = -700.0


def _segment_matrix(q2: float, d: float) -> tuple[np.ndarray, float]:
    """Scaled ``(phi, phi')`` transfer matrix across a uniform segment and the
    log of the factor removed, ``|Im q| d``. Regular at ``q = 0``."""
    if q2 > 0:
        q = math.sqrt(q2)
        c, s = math.cos(q * d), math.sin(q * d)
        return np.array([[c, s / q], [-q * s, c]]), 0.0
    if q2 == 0:
        return np.array([[1.0, d], [0.0, 1.0]]), 0.0
    kappa = math.sqrt(-q2)
    decay = math.exp(-2 * kappa * d)
    ch, sh = 0.5 * (1 + decay), 0.5 * (1 - decay)
    return np.array([[ch, sh / kappa], [kappa * sh, ch]]), kappa * d


def helmholtz_mode(omega: float, profile: BarrierProfile) -> Transmission:
    """Transmission and reflection of ``phi'' + (omega^2 - omega_c(r)^2) phi = 0``.

    Interior segments are chained as ``(phi, phi')`` transfer matrices, which
    stay regular when a segment sits exactly at cutoff; the product is then
    expressed in lead amplitudes ``A e^{iqx} + B e^{-iqx}``. Each factor is
    renormalised and its log-scale carried separately, so thick evanescent
    segments never overflow. ``T`` uses ``det M = q_in / q_out`` and is
    reported as 0 with ``saturated`` below ``exp(-700)``.
    """
    segs = profile.segments
    first, last = segs[0][1], segs[-1][1]
    if not (omega > first and omega > last):
        raise DomainError(f"leads must propagate: omega={omega}, lead cutoffs {first}, {last}")
    q_in = math.sqrt((omega - first) * (omega + first))
    q_out = math.sqrt((omega - last) * (omega + last))

    m = np.array([[1, 1], [1j * q_in, -1j * q_in]], dtype=complex)
    log_scale = 0.0
    for length, cut in segs[1:-1]:
        seg, growth = _segment_matrix((omega - cut) * (omega + cut), length)
        m = seg @ m
        scale = np.max(np.abs(m))
        m /= scale
        log_scale += growth + math.log(scale)
    m = 0.5 * np.array([[1, -1j / q_out], [1, 1j / q_out]], dtype=complex) @ m
    reflection = -m[1, 0] / m[1, 1]
    R = float(abs(reflection) ** 2)
    log_T = float(math.log(q_in / q_out) - 2 * (log_scale + math.log(abs(m[1, 1]))))
    if log_T < LOG_UNDERFLOW:
        return Transmission(0.0, R, True, log_T)
    return Transmission(math.exp(log_T), R, False, log_T)


def thick_barrier_transmission(omega: float, lead_cutoff: float, barrier_cutoff: float, length: float) -> float:
    """Leading asymptotic ``16 k^2 kappa^2 / (k^2 + kappa^2)^2 exp(-2 kappa L)``."""
    k2 = (omega - lead_cutoff) * (omega + lead_cutoff)
    kappa2 = (barrier_cutoff - omega) * (barrier_cutoff + omega)
    return 16 * k2 * kappa2 / (k2 + kappa2) ** 2 * math.exp(-2 * math.sqrt(kappa2) * length)


def helmholtz_profile(omega: float, omega_c: float, length: float, points: int = 4001):
    """Finite-difference solution of ``phi'' + (omega^2 - omega_c^2) phi = 0``
    on ``[0, length]`` with ``phi(0) = 1``, ``phi(length) = 0``."""
    from scipy.linalg import solve_banded

    if points < 8:
        raise DomainError("need at least 8 points")
    r = np.linspace(0.0, length, points)
    h = r[1] - r[0]
    n = points - 2
    diag = np.full(n, -2.0 + h * h * (omega * omega - omega_c * omega_c))
    ab = np.zeros((3, n))
    ab[0, 1:] = 1.0
    ab[1] = diag
    ab[2, :-1] = 1.0
    rhs = np.zeros(n)
    rhs[0] = -1.0
    interior = solve_banded((1, 1), ab, rhs)
    return r, np.concatenate([[1.0], interior, [0.0]])


def evanescent_decay_fit(omega: float, omega_c: float, r, phi, min_decades: float = 3.0) -> float:
    """Decay constant from a least-squares fit of ``log|phi|`` against ``r``.

    The samples must span ``min_decades`` e-foldings.
    """
    if not 0 <= omega < omega_c:
        raise DomainError("decay fit needs 0 <= omega < omega_c")
    r = np.asarray(r, dtype=float)
    mag = np.abs(np.asarray(phi))
    good = mag > 0
    if good.sum() < 3:
        raise DetectionError("not enough nonzero samples to fit")
    log_mag = np.log(mag[good])
    if log_mag.max() - log_mag.min() < min_decades:
        raise DetectionError(
            f"insufficient dynamic range: {log_mag.max() - log_mag.min():.3g} e-folds < {min_decades}"
        )
    slope, _ = np.polyfit(r[good], log_mag, 1)
    return float(-slope)
