"""Six-component photon spinor algebra.

The spinor is ``psi = (E, iB) / sqrt(2)``. All matrices are dense complex
6x6 arrays in the same (E block, iB block) order. Momentum-space symbols
assume plane waves ``exp[-i(omega t - k.x)]``.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import DomainError

SQRT_HALF = np.sqrt(0.5)
I3 = np.eye(3, dtype=complex)
I6 = np.eye(6, dtype=complex)
Z3 = np.zeros((3, 3), dtype=complex)


def levi_civita(i: int, j: int, k: int) -> int:
    """Permutation symbol on indices 1..3."""
    return int((i - j) * (j - k) * (k - i) / 2)


def _check_axis(i: int, low: int = 1) -> int:
    if i not in range(low, 4):
        raise DomainError(f"axis index must be in {low}..3, got {i}")
    return i


def tau(i: int) -> np.ndarray:
    """Spin-1 matrix with entries ``(tau_i)_jk = -i eps_ijk``."""
    _check_axis(i)
    m = np.zeros((3, 3), dtype=complex)
    for j, k in itertools.product(range(1, 4), repeat=2):
        m[j - 1, k - 1] = -1j * levi_civita(i, j, k)
    return m


def beta(mu: int) -> np.ndarray:
    """Lower-index ``beta_mu``: ``beta_0 = diag(I, -I)``, ``beta_j = [[0, tau_j], [-tau_j, 0]]``."""
    _check_axis(mu, low=0)
    if mu == 0:
        return np.block([[I3, Z3], [Z3, -I3]])
    t = tau(mu)
    return np.block([[Z3, t], [-t, Z3]])


def beta_upper(mu: int) -> np.ndarray:
    """Contravariant ``beta^mu``: ``beta^0 = beta_0`` and ``beta^j = -beta_j``."""
    return beta(mu) if mu == 0 else -beta(mu)


def spin(j: int) -> np.ndarray:
    """``S_j = diag(tau_j, tau_j)``."""
    t = tau(j)
    return np.block([[t, Z3], [Z3, t]])


def omega_symbol(k) -> np.ndarray:
    """Plane-wave symbol of the transversality operator: both diagonal blocks
    equal the outer product ``k k^T``."""
    k = np.asarray(k, dtype=float)
    outer = np.outer(k, k).astype(complex)
    return np.block([[outer, Z3], [Z3, outer]])


def slash(k) -> np.ndarray:
    """``beta^mu k_mu = beta_0 k_0 - sum_j beta_j k_j`` for lower-index ``k``."""
    k = np.asarray(k, dtype=float)
    return sum(beta_upper(mu) * k[mu] for mu in range(4))


def free_hamiltonian_symbol(k) -> np.ndarray:
    """``H(k) = beta_0 (beta . k)``, the symbol of ``-i beta_0 beta . grad``."""
    k = np.asarray(k, dtype=float)
    return beta(0) @ sum(beta(j) * k[j - 1] for j in range(1, 4))


def square_identity_residual(k) -> float:
    """Max-norm of ``slash(k) slash(k) - [(k.k) I + Omega(k_spatial)]``."""
    k = np.asarray(k, dtype=float)
    s = slash(k)
    norm = k[0] ** 2 - k[1] ** 2 - k[2] ** 2 - k[3] ** 2
    diff = s @ s - (norm * I6 + omega_symbol(k[1:]))
    return float(np.max(np.abs(diff)))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def angular_momentum_closure_residual() -> float:
    """Largest residual of the matrix identities behind ``[H, L + S] = 0``.

    Checks ``[beta_m, S_j] = i eps_mjl beta_l`` for all ``m, j`` and that
    ``beta_0`` commutes with every ``S_j``.
    """
    worst = 0.0
    for m, j in itertools.product(range(1, 4), repeat=2):
        expected = sum(1j * levi_civita(m, j, l) * beta(l) for l in range(1, 4))
        worst = max(worst, float(np.max(np.abs(commutator(beta(m), spin(j)) - expected))))
    for j in range(1, 4):
        worst = max(worst, float(np.max(np.abs(commutator(beta(0), spin(j))))))
    return worst


def assemble_spinor(E, B) -> np.ndarray:
    """``(E1, E2, E3, iB1, iB2, iB3) / sqrt(2)``. Complex fields are accepted
    (analytic signals)."""
    E = np.asarray(E, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return SQRT_HALF * np.concatenate([E, 1j * B], axis=0)


def split_spinor(psi) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`assemble_spinor` along the leading axis."""
    psi = np.asarray(psi, dtype=complex)
    return psi[:3] / SQRT_HALF, psi[3:] / (1j * SQRT_HALF)


def is_hermitian(m: np.ndarray, atol: float = 0.0) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)


def sorted_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues sorted ascending by real part, ties broken by imaginary part."""
    w = np.linalg.eigvals(m)
    order = np.lexsort((w.imag, w.real))
    return w[order]
