import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geophase.errors import ConfigError
from geophase.measures import concurrence_pure, fidelity_pure
from geophase.phases import (
    ABSetup,
    ACSetup,
    BerrySetup,
    DABSetup,
    HMWSetup,
    apply_phase,
    decompose,
    decompose_state,
    phase_equivalent,
    phased_singlet,
    setup_from_dict,
    wrap_angle,
)
from geophase.qstate import PureState2Q, singlet

from conftest import random_states

S = 1 / math.sqrt(2)
param = st.floats(-6, 6, allow_nan=False)


def setups():
    return st.one_of(
        st.builds(ABSetup, param),
        st.builds(ACSetup, param, param, param),
        st.builds(HMWSetup, param, param),
        st.builds(BerrySetup, param),
        st.builds(DABSetup, param, param),
    )


def test_ac_quarter_pi_example():
    out = apply_phase(singlet(), ACSetup(mu=1.0, lambda1=math.pi / 4, lambda2=0.0))
    expected = S * cmath.exp(-1j * math.pi / 4) * np.array([0, 1, -cmath.exp(1j * math.pi / 2), 0])
    np.testing.assert_allclose(out.amp, expected, atol=1e-15)


def test_per_arm_factors_for_ac():
    # Each arm's spin-up ket picks up exp(-iμλ), spin-down exp(+iμλ).
    mu, l1, l2 = 0.7, 1.3, -0.4
    out = apply_phase(PureState2Q(np.full(4, 0.5)), ACSetup(mu, l1, l2))
    left = (cmath.exp(-1j * mu * l1), cmath.exp(1j * mu * l1))
    right = (cmath.exp(-1j * mu * l2), cmath.exp(1j * mu * l2))
    expected = 0.5 * np.array([left[l] * right[r] for l in (0, 1) for r in (0, 1)])
    np.testing.assert_allclose(out.amp, expected, atol=1e-15)


@pytest.mark.parametrize("lam", [0.0, 1.0, -3.0, 17.5])
def test_zero_coupling_is_identity(lam):
    out = apply_phase(singlet(), ACSetup(mu=0.0, lambda1=lam, lambda2=-lam))
    np.testing.assert_array_equal(out.amp, singlet().amp)


def test_ab_is_global_phase():
    out = apply_phase(singlet(), ABSetup(phi_b=1.3))
    np.testing.assert_allclose(out.amp, cmath.exp(-1.3j) * singlet().amp, atol=1e-15)
    assert fidelity_pure(singlet(), out) == 1.0


def test_decompose_examples():
    assert decompose(ACSetup(1.0, 1.0, 0.5)).relative_phase == pytest.approx(1.0, abs=1e-15)
    d = decompose(DABSetup(g=2.0, phi_e=0.7))
    assert d.relative_phase == 0.0
    assert d.global_phase == pytest.approx(-1.4, abs=1e-15)
    assert decompose(ACSetup(1.0, 0.8, 0.8)).relative_phase == 0.0
    assert decompose(HMWSetup(2.0, 0.25)).to_dict() == {"global_phase": -0.5, "relative_phase": 1.0}
    assert decompose(BerrySetup(0.3)).relative_phase == pytest.approx(0.6)
    assert decompose(ABSetup(0.9)).to_dict() == {"global_phase": -0.9, "relative_phase": 0.0}


@pytest.mark.parametrize(
    "phi, expected",
    [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi), (3 * math.pi, math.pi), (4.0, 4.0 - 2 * math.pi), (-7.0, -7.0 + 2 * math.pi)],
)
def test_wrap_angle(phi, expected):
    assert wrap_angle(phi) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e3, 1e3))
def test_wrap_angle_range(phi):
    w = wrap_angle(phi)
    assert -math.pi < w <= math.pi
    assert math.cos(w) == pytest.approx(math.cos(phi), abs=1e-9)
    assert math.sin(w) == pytest.approx(math.sin(phi), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(setups())
def test_singlet_image_matches_decomposition(setup):
    # per-arm form == factored form with global phase and relative phase
    out = apply_phase(singlet(), setup)
    dec = decompose(setup)
    expected = cmath.exp(1j * dec.global_phase) * S * np.array([0, 1, -cmath.exp(1j * dec.relative_phase), 0])
    assert np.max(np.abs(out.amp - expected)) <= 1e-12
    back = decompose_state(out)
    assert abs(cmath.exp(1j * back.relative_phase) - cmath.exp(1j * dec.relative_phase)) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(setups())
def test_concurrence_unaffected(setup):
    assert concurrence_pure(apply_phase(singlet(), setup)) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(param, param, param)
def test_ac_inverse(mu, l1, l2):
    for psi in random_states(3):
        there = apply_phase(psi, ACSetup(mu, l1, l2))
        back = apply_phase(there, ACSetup(mu, -l1, -l2))
        assert np.max(np.abs(back.amp - psi.amp)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(setups())
def test_norm_preserved(setup):
    for psi in random_states(3):
        assert np.sum(np.abs(apply_phase(psi, setup).amp) ** 2) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(param, param, param, param, param, param)
def test_relative_phases_add(m1, a1, b1, m2, a2, b2):
    s1, s2 = ACSetup(m1, a1, b1), ACSetup(m2, a2, b2)
    out = apply_phase(apply_phase(singlet(), s1), s2)
    total = decompose(s1).relative_phase + decompose(s2).relative_phase
    got = decompose_state(out).relative_phase
    assert abs(cmath.exp(1j * got) - cmath.exp(1j * total)) <= 1e-10


def test_phase_equivalent():
    psi = random_states(1)[0]
    for theta in (0.0, 0.5, math.pi, -2.0):
        assert phase_equivalent(psi, PureState2Q(psi.amp * cmath.exp(1j * theta)))
    assert phase_equivalent(singlet(), apply_phase(singlet(), ABSetup(2.2)))
    assert phase_equivalent(singlet(), apply_phase(singlet(), DABSetup(3.0, -0.4)))
    # 2μλ_E = π
    assert not phase_equivalent(singlet(), apply_phase(singlet(), ACSetup(1.0, math.pi / 2, 0.0)))


def test_phased_singlet_helper():
    np.testing.assert_allclose(
        phased_singlet(0.8).amp, apply_phase(singlet(), BerrySetup(0.4)).amp * cmath.exp(0.4j), atol=1e-15
    )


def test_setup_json_round_trip():
    for s in (ABSetup(0.1), ACSetup(1.0, 2.0, 3.0), HMWSetup(0.5, -1.0), BerrySetup(0.2), DABSetup(2.0, 0.7)):
        assert setup_from_dict(s.to_dict()) == s
    assert ACSetup(1, 2, 3).to_dict() == {"kind": "ac", "mu": 1, "lambda1": 2, "lambda2": 3}


def test_setup_errors():
    with pytest.raises(ConfigError):
        setup_from_dict({"kind": "xy"})
    with pytest.raises(ConfigError):
        setup_from_dict({"kind": "ac", "mu": 1.0})
    with pytest.raises(ConfigError):
        ACSetup(float("nan"), 0.0, 0.0)
