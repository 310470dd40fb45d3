"""Spin projectors and joint spin-correlation expectation values.

A single in-plane angle θ denotes the Bloch direction (sin θ, 0, cos θ),
measured from +z towards +x. Only in this plane does the operator
expectation on a phased singlet reduce to

    E(α, β) = -cos α cos β - sin α sin β cos φ

since σ_x⊗σ_y picks up a sin φ cross term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geophase.errors import NonHermitianExpectation
from geophase.linalg import tensor_product
from geophase.qstate import I2, PAULIS, PureState2Q

IMAG_TOL = 1e-10
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementDirection:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)
        if abs(n - 1.0) > UNIT_TOL:
            raise ValueError(f"direction must be a unit vector (norm {n!r})")

    @classmethod
    def from_angle(cls, theta: float) -> "MeasurementDirection":
        """In-plane direction at angle θ from +z in the x-z plane."""
        return cls(math.sin(theta), 0.0, math.cos(theta))

    @classmethod
    def from_spherical(cls, polar: float, azimuth: float) -> "MeasurementDirection":
        s = math.sin(polar)
        return cls(s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar))

    @classmethod
    def from_vector(cls, v) -> "MeasurementDirection":
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def spin_operator(self) -> np.ndarray:
        """n·σ."""
        return self.x * PAULIS[0] + self.y * PAULIS[1] + self.z * PAULIS[2]


X_AXIS = MeasurementDirection(1.0, 0.0, 0.0)
Y_AXIS = MeasurementDirection(0.0, 1.0, 0.0)
Z_AXIS = MeasurementDirection(0.0, 0.0, 1.0)


def _direction(d) -> MeasurementDirection:
    if isinstance(d, MeasurementDirection):
        return d
    return MeasurementDirection.from_angle(float(d))


def projector(direction: MeasurementDirection, outcome: int) -> np.ndarray:
    """Projector (I ± n·σ)/2 onto spin ±1 along ``direction``."""
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    return 0.5 * (I2 + outcome * direction.spin_operator())


def real_expectation(psi: PureState2Q, op: np.ndarray) -> float:
    """⟨ψ|op|ψ⟩ for a Hermitian 4x4 operator, checked to be real."""
    val = np.vdot(psi.amp, op @ psi.amp)
    if abs(val.imag) > IMAG_TOL:
        raise NonHermitianExpectation(f"imaginary residue {val.imag:.3e}")
    return float(val.real)


def joint_expectation(psi: PureState2Q, a, b) -> float:
    """E(a, b) = ⟨ψ|(P₊(a) - P₋(a)) ⊗ (P₊(b) - P₋(b))|ψ⟩.

    ``a`` and ``b`` are ``MeasurementDirection`` instances or in-plane angles.
    """
    a = _direction(a)
    b = _direction(b)
    obs_a = projector(a, 1) - projector(a, -1)
    obs_b = projector(b, 1) - projector(b, -1)
    return real_expectation(psi, tensor_product(obs_a, obs_b))


def closed_form_e(alpha: float, beta: float, phi: float) -> float:
    return -math.cos(alpha) * math.cos(beta) - math.sin(alpha) * math.sin(beta) * math.cos(phi)
