import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geophase.errors import NonHermitianExpectation
from geophase.measurement import (
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    MeasurementDirection,
    closed_form_e,
    joint_expectation,
    projector,
    real_expectation,
)
from geophase.phases import ACSetup, apply_phase, phased_singlet
from geophase.qstate import I2, PureState2Q, singlet

from conftest import random_states

angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


def unit_vectors():
    return st.tuples(angle, angle).map(lambda pa: MeasurementDirection.from_spherical(*pa))


def test_projector_examples():
    np.testing.assert_array_equal(projector(Z_AXIS, 1), np.diag([1, 0]))
    np.testing.assert_allclose(projector(X_AXIS, 1), [[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(ValueError):
        projector(Z_AXIS, 0)


@settings(max_examples=100, deadline=None)
@given(unit_vectors())
def test_projector_algebra(n):
    p, m = projector(n, 1), projector(n, -1)
    np.testing.assert_allclose(p + m, I2, atol=1e-15)
    np.testing.assert_allclose(p @ m, 0, atol=1e-15)
    for q in (p, m):
        np.testing.assert_allclose(q, q.conj().T, atol=1e-15)
        np.testing.assert_allclose(q @ q, q, atol=1e-15)
        assert np.trace(q).real == pytest.approx(1)


def test_direction_validation():
    with pytest.raises(ValueError):
        MeasurementDirection(1.0, 1.0, 0.0)
    d = MeasurementDirection.from_angle(math.pi / 2)
    assert (d.x, d.y, d.z) == pytest.approx((1.0, 0.0, 0.0))


def test_singlet_perfect_anticorrelation():
    assert joint_expectation(singlet(), Z_AXIS, Z_AXIS) == pytest.approx(-1.0, abs=1e-15)


def test_cross_term_x_y_is_sin_phi():
    # Direct 4x4 evaluation: <ψ|σx⊗σy|ψ> for (|ud> - e^{iφ}|du>)/√2 is sin φ.
    for phi in np.linspace(-3, 3, 13):
        psi = phased_singlet(phi)
        assert joint_expectation(psi, X_AXIS, Y_AXIS) == pytest.approx(math.sin(phi), abs=1e-12)
        assert joint_expectation(psi, Y_AXIS, X_AXIS) == pytest.approx(-math.sin(phi), abs=1e-12)


@pytest.mark.parametrize("phi", [0.0, 0.4, 2.0])
def test_closed_form_examples(phi):
    assert closed_form_e(0.0, 0.0, phi) == -1.0
    assert closed_form_e(math.pi / 2, math.pi / 2, phi) == pytest.approx(-math.cos(phi), abs=1e-15)
    assert closed_form_e(0.3, 1.1, 0.0) == pytest.approx(-math.cos(0.3 - 1.1), abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(angle, angle, angle)
def test_operator_matches_closed_form(alpha, beta, phi):
    # AC with μλ_E = φ/2 produces relative phase φ (plus a global phase)
    psi = apply_phase(singlet(), ACSetup(mu=1.0, lambda1=phi / 2, lambda2=0.0))
    assert abs(joint_expectation(psi, alpha, beta) - closed_form_e(alpha, beta, phi)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(unit_vectors(), unit_vectors(), angle)
def test_global_phase_invariance(a, b, theta):
    for psi in random_states(3):
        rotated = PureState2Q(psi.amp * cmath.exp(1j * theta))
        assert joint_expectation(rotated, a, b) == pytest.approx(joint_expectation(psi, a, b), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(unit_vectors(), unit_vectors())
def test_expectation_bounded(a, b):
    for psi in random_states(5):
        assert abs(joint_expectation(psi, a, b)) <= 1 + 1e-10


@settings(max_examples=200, deadline=None)
@given(unit_vectors(), unit_vectors())
def test_singlet_rotational_invariance(a, b):
    assert joint_expectation(singlet(), a, b) == pytest.approx(-float(a.vector @ b.vector), abs=1e-12)


def test_complex_expectation_raises():
    op = np.zeros((4, 4), dtype=complex)
    op[0, 0] = 1j
    with pytest.raises(NonHermitianExpectation):
        real_expectation(PureState2Q(np.array([1, 0, 0, 0])), op)
