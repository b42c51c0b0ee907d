import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from guidedphoton.errors import DomainError
from guidedphoton.minkowski import (
    Causal,
    FourVector,
    boost_axial,
    classify,
    decompose_guided,
    minkowski_dot,
    phase_split_check,
)

finite = st.floats(-50, 50, allow_nan=False)
vectors = st.tuples(finite, finite, finite, finite)
speeds = st.floats(-0.99, 0.99)
cutoffs = st.floats(0.05, 50)
axial = st.floats(-50, 50)


def rel_close(a, b, scale, tol=1e-12):
    return abs(a - b) <= tol * max(scale, 1.0)


def test_dot_examples():
    assert minkowski_dot((1, 0, 0, 0), (1, 0, 0, 0)) == 1
    assert minkowski_dot((5, 3, 4, 0), (5, 3, 4, 0)) == 0
    m = 2.5
    eta = (0.0, 1.5 / m, 2.0 / m, 0.0)
    assert minkowski_dot(eta, eta) == pytest.approx(-1, abs=1e-15)


def test_fourvector_rejects_nonfinite():
    with pytest.raises(DomainError):
        FourVector(math.nan, 0, 0, 0)
    with pytest.raises(DomainError):
        FourVector(0, math.inf, 0, 0)


def test_fourvector_arithmetic():
    a = FourVector(1, 2, 3, 4)
    b = FourVector(0.5, 0, -1, 2)
    assert tuple(a + b) == (1.5, 2, 2, 6)
    assert tuple(a - b) == (0.5, 2, 4, 2)
    assert tuple(2 * a) == (2, 4, 6, 8)
    assert np.array_equal(np.asarray(-a), [-1, -2, -3, -4])


def test_classify_examples():
    assert classify((2, 0, 0, 1), 1e-12) is Causal.TIMELIKE
    assert classify((0, math.pi, 0, 0), 1e-12) is Causal.SPACELIKE
    assert classify((5, 3, 4, 0), 1e-12) is Causal.LIGHTLIKE
    # default band is relative to the vector size
    assert classify((5e8, 3e8, 4e8, 0)) is Causal.LIGHTLIKE
    with pytest.raises(DomainError):
        classify((1, 0, 0, 0), 0.0)


def test_boost_examples():
    assert tuple(boost_axial((2.0, 0, 0, 0), 0.0)) == (2.0, 0, 0, 0)
    b = boost_axial((math.pi, 0, 0, 0), 0.6)
    assert np.allclose(tuple(b), (1.25 * math.pi, 0, 0, 0.75 * math.pi), rtol=0, atol=1e-15)
    with pytest.raises(DomainError):
        boost_axial((1, 0, 0, 0), 1.0)
    with pytest.raises(DomainError):
        boost_axial((1, 0, 0, 0), -1.2)


def test_boost_preserves_norm_at_037(rng):
    for _ in range(100):
        a = rng.uniform(-10, 10, 4)
        b = boost_axial(a, 0.37)
        assert rel_close(minkowski_dot(b, b), minkowski_dot(a, a), np.dot(a, a))


@given(vectors, vectors, speeds)
def test_boost_preserves_dot(a, b, v):
    ab, bb = boost_axial(a, v), boost_axial(b, v)
    gamma2 = 1 / (1 - v * v)
    scale = gamma2 * math.sqrt(np.dot(a, a) * np.dot(b, b))
    assert rel_close(minkowski_dot(ab, bb), minkowski_dot(a, b), scale)


@given(vectors, speeds)
def test_boost_inverse(a, v):
    back = boost_axial(boost_axial(a, v), -v)
    scale = math.sqrt(np.dot(a, a)) / (1 - abs(v))
    assert np.allclose(tuple(back), a, rtol=0, atol=1e-12 * max(scale, 1.0))


def test_decompose_examples():
    d = decompose_guided(math.pi, 0.0)
    assert tuple(d.p_L) == (math.pi, 0, 0, 0)
    assert tuple(d.p_T) == (0, math.pi, 0, 0)
    d = decompose_guided(3.0, 4.0)
    assert tuple(d.k) == (5.0, 3.0, 0.0, 4.0)
    assert minkowski_dot(d.p_L, d.p_T) == 0
    d = decompose_guided(math.pi, 2.7)
    assert classify(d.p_L) is Causal.TIMELIKE
    assert classify(d.p_T) is Causal.SPACELIKE
    assert classify(d.k) is Causal.LIGHTLIKE
    with pytest.raises(DomainError):
        decompose_guided(0.0, 1.0)


@given(cutoffs, st.floats(0, 50))
def test_decomposition_invariants(wc, k3):
    d = decompose_guided(wc, k3)
    scale = wc * wc + k3 * k3
    assert np.allclose(np.asarray(d.k), np.asarray(d.p_T) + np.asarray(d.p_L), rtol=0, atol=1e-12 * math.sqrt(scale))
    assert rel_close(minkowski_dot(d.p_L, d.p_T), 0.0, scale)
    assert rel_close(minkowski_dot(d.eta, d.eta), -1.0, 1.0)
    assert rel_close(minkowski_dot(d.k, d.k), 0.0, scale)
    assert rel_close(minkowski_dot(d.p_L, d.p_L), wc * wc, scale)
    assert np.allclose(np.asarray(d.p_T), d.mass * np.asarray(d.eta), rtol=0, atol=1e-15 * wc)


@given(cutoffs, st.floats(0, 50), speeds)
def test_mass_is_boost_invariant(wc, k3, v):
    d = decompose_guided(wc, k3)
    p = boost_axial(d.p_L, v)
    gamma2 = 1 / (1 - v * v)
    assert rel_close(minkowski_dot(p, p), wc * wc, gamma2 * (wc * wc + k3 * k3))
    assert tuple(boost_axial(d.p_T, v)) == tuple(d.p_T)


def test_phase_split_examples(rng):
    d = decompose_guided(3.0, 4.0)
    assert phase_split_check(d, (0, 0, 0, 0)) == 0
    assert phase_split_check(d, (1, 1, 1, 1)) <= 1e-12
    # the two sides evaluated by hand: k.x = 5 - 3 - 0 - 4 = -2 = (-3) + (5 - 4)
    for _ in range(100):
        d = decompose_guided(rng.uniform(0.1, 10), rng.uniform(0, 10))
        x = rng.uniform(-10, 10, 4)
        scale = np.linalg.norm(np.asarray(d.k)) * np.linalg.norm(x)
        assert phase_split_check(d, x) <= 1e-12 * max(scale, 1)


def test_general_direction():
    d = decompose_guided(5.0, 1.0, direction=(3.0, 4.0))
    assert np.allclose(np.asarray(d.p_T), (0, 3, 4, 0))
    assert minkowski_dot(d.eta, d.eta) == pytest.approx(-1)
    with pytest.raises(DomainError):
        decompose_guided(1.0, 1.0, direction=(0.0, 0.0))
