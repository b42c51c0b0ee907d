import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from guidedphoton import propagate as pg
from guidedphoton.errors import DetectionError, DomainError
from guidedphoton.modes import evanescent_kappa


def rectangular_barrier_T(omega, lead, barrier, length):
    """Textbook rectangular-barrier transmission, above or below the barrier cutoff."""
    k2 = omega**2 - lead**2
    q2 = omega**2 - barrier**2
    if q2 < 0:
        kappa = math.sqrt(-q2)
        s = math.sinh(kappa * length)
        return 1 / (1 + ((k2 + kappa**2) ** 2) / (4 * k2 * kappa**2) * s * s)
    if q2 == 0:
        return 1 / (1 + k2 * length**2 / 4)
    q = math.sqrt(q2)
    s = math.sin(q * length)
    return 1 / (1 + ((k2 - q2) ** 2) / (4 * k2 * q2) * s * s)


def ode_transmission(omega, profile):
    """Integrate the Helmholtz equation backward from a pure outgoing wave."""
    segs = profile.segments
    q_in = math.sqrt(omega**2 - segs[0][1] ** 2)
    q_out = math.sqrt(omega**2 - segs[-1][1] ** 2)
    y = np.array([1.0 + 0j, 1j * q_out])
    for length, cut in reversed(segs[1:-1]):
        def rhs(_, v, c=cut):
            return [v[1], -(omega**2 - c**2) * v[0]]

        sol = solve_ivp(rhs, (length, 0.0), y, rtol=1e-12, atol=1e-14, method="DOP853")
        y = sol.y[:, -1]
    a = 0.5 * (y[0] + y[1] / (1j * q_in))
    b = 0.5 * (y[0] - y[1] / (1j * q_in))
    return (q_out / q_in) / abs(a) ** 2, abs(b / a) ** 2


def random_profile(rng, omega):
    n = int(rng.integers(1, 6))
    lead_a, lead_b = rng.uniform(0, 0.9 * omega, 2)
    middle = [(rng.uniform(0.05, 1.5), rng.uniform(0, 1.5 * omega)) for _ in range(n)]
    return pg.BarrierProfile(((1.0, lead_a), *middle, (1.0, lead_b)))


@pytest.mark.parametrize("barrier", [2.0, 4.0, 5.0, 6.0, 9.0])
@pytest.mark.parametrize("length", [0.1, 0.8, 2.5])
def test_single_barrier_closed_form(barrier, length):
    omega, lead = 5.0, 3.0
    t = pg.helmholtz_mode(omega, pg.BarrierProfile.single_barrier(lead, barrier, length))
    assert t.T == pytest.approx(rectangular_barrier_T(omega, lead, barrier, length), rel=1e-10)
    assert t.T + t.R == pytest.approx(1, abs=1e-10)


def test_matches_ode_oracle(rng):
    for _ in range(20):
        omega = rng.uniform(1, 6)
        profile = random_profile(rng, omega)
        t = pg.helmholtz_mode(omega, profile)
        T_ref, R_ref = ode_transmission(omega, profile)
        assert t.T == pytest.approx(T_ref, rel=1e-7, abs=1e-12)
        assert t.R == pytest.approx(R_ref, rel=1e-7, abs=1e-10)


def test_unitarity_over_random_profiles(rng):
    for _ in range(100):
        omega = rng.uniform(0.5, 10)
        t = pg.helmholtz_mode(omega, random_profile(rng, omega))
        assert abs(t.T + t.R - 1) <= 1e-10
        assert not t.saturated


def test_no_barrier_is_transparent():
    t = pg.helmholtz_mode(4.0, pg.BarrierProfile(((1.0, 1.0), (2.0, 1.0), (1.0, 1.0))))
    assert t.T == pytest.approx(1, abs=1e-14)
    assert t.R <= 1e-28


def test_transmission_approaches_one_as_barrier_drops():
    omega, lead, length = 5.0, 3.0, 2.0
    barriers = [6.0, 5.5, 5.0, 4.0, 3.5, 3.0]
    T = [pg.helmholtz_mode(omega, pg.BarrierProfile.single_barrier(lead, b, length)).T for b in barriers]
    assert np.all(np.diff(T[:4]) > 0)
    assert T[-1] == pytest.approx(1, abs=1e-14)


def test_thick_barrier_log_slope_and_asymptote():
    omega, lead, barrier = 5.0, 3.0, 6.0
    kappa = evanescent_kappa(omega, barrier)
    lengths = np.linspace(3.0, 8.0, 11)
    logs = [pg.helmholtz_mode(omega, pg.BarrierProfile.single_barrier(lead, barrier, L)).log_T for L in lengths]
    slope = np.polyfit(lengths, logs, 1)[0]
    assert slope == pytest.approx(-2 * kappa, rel=0.02)
    t = pg.helmholtz_mode(omega, pg.BarrierProfile.single_barrier(lead, barrier, 8.0))
    assert t.T == pytest.approx(pg.thick_barrier_transmission(omega, lead, barrier, 8.0), rel=1e-5)


def test_very_thick_barrier_saturates_without_overflow():
    t = pg.helmholtz_mode(5.0, pg.BarrierProfile.single_barrier(3.0, 6.0, 1000.0))
    assert t.saturated and t.T == 0.0
    assert t.log_T == pytest.approx(-2 * evanescent_kappa(5.0, 6.0) * 1000.0, rel=1e-3)
    assert t.R == pytest.approx(1, abs=1e-12)


def test_profile_validation():
    with pytest.raises(DomainError):
        pg.BarrierProfile(())
    with pytest.raises(DomainError):
        pg.BarrierProfile(((1.0, 1.0), (-1.0, 2.0), (1.0, 1.0)))
    with pytest.raises(DomainError):
        pg.BarrierProfile(((1.0, -1.0),))
    with pytest.raises(DomainError):
        pg.helmholtz_mode(2.0, pg.BarrierProfile.single_barrier(3.0, 4.0, 1.0))


@pytest.mark.parametrize("omega,omega_c", [(0.0, math.pi), (3.0, 5.0), (1.0, 1.5)])
def test_evanescent_decay_fit(omega, omega_c):
    kappa = evanescent_kappa(omega, omega_c)
    length = 8 / kappa
    r, phi = pg.helmholtz_profile(omega, omega_c, length)
    # fit the part well away from the far wall, where the cosh tail bends
    sel = r <= 0.6 * length
    fitted = pg.evanescent_decay_fit(omega, omega_c, r[sel], phi[sel])
    assert fitted == pytest.approx(kappa, rel=0.01)


def test_decay_fit_requires_dynamic_range():
    r = np.linspace(0, 1, 50)
    with pytest.raises(DetectionError):
        pg.evanescent_decay_fit(0.0, 1.0, r, np.exp(-r))
    with pytest.raises(DomainError):
        pg.evanescent_decay_fit(2.0, 1.0, r, np.exp(-r))
