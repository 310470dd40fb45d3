"""Two-qubit pure states, density matrices and Pauli operators.

Basis ordering is (|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩) with the left particle as the
high bit, i.e. index ``2*left + right`` with ↑ = 0 and ↓ = 1. The spin-up
and spin-down kets are the +1 and -1 eigenvectors of σ_z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from geophase.errors import NotHermitian, NotNormalized, NotPSD
from geophase.linalg import hermitian_eigen

NORM_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState2Q:
    """Normalized amplitude vector of a two-qubit pure state.

    Denormalized input is rejected rather than rescaled.
    """

    amp: np.ndarray = field(repr=False)

    def __post_init__(self):
        amp = np.asarray(self.amp, dtype=complex)
        if amp.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {amp.shape}")
        if not np.all(np.isfinite(amp)):
            raise ValueError("non-finite amplitude")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm2!r} differs from 1 by more than {NORM_TOL}")
        object.__setattr__(self, "amp", _readonly(amp))

    @classmethod
    def normalized(cls, amp) -> "PureState2Q":
        """Build a state from an arbitrary nonzero vector by rescaling it."""
        amp = np.asarray(amp, dtype=complex)
        n = np.linalg.norm(amp)
        if n == 0:
            raise ValueError("zero vector has no normalized state")
        return cls(amp / n)

    def __repr__(self) -> str:
        body = ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in self.amp)
        return f"PureState2Q([{body}])"

    def inner(self, other: "PureState2Q") -> complex:
        """⟨self|other⟩."""
        return complex(np.vdot(self.amp, other.amp))

    def amplitude_matrix(self) -> np.ndarray:
        """2x2 matrix M[l, r] = amp[2l + r]."""
        return self.amp.reshape(2, 2)

    def to_json(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self.amp]

    @classmethod
    def from_json(cls, data) -> "PureState2Q":
        return cls(np.array([complex(re, im) for re, im in data]))


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """4x4 density matrix: Hermitian, unit trace, positive semidefinite."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("non-finite entry")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise NotHermitian("density matrix is not Hermitian within 1e-12")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise NotNormalized(f"trace {tr!r} differs from 1")
        w, _ = hermitian_eigen(m)
        if w[-1] < -1e-10:
            raise NotPSD(f"eigenvalue {w[-1]:.3e} is negative")
        object.__setattr__(self, "mat", _readonly(m))

    def to_json(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self.mat.reshape(-1)]

    @classmethod
    def from_json(cls, data) -> "DensityMatrix4":
        return cls(np.array([complex(re, im) for re, im in data]).reshape(4, 4))


def singlet() -> PureState2Q:
    """(|↑↓⟩ - |↓↑⟩)/√2."""
    s = 1.0 / math.sqrt(2.0)
    return PureState2Q(np.array([0.0, s, -s, 0.0], dtype=complex))


def basis_state(left: int, right: int) -> PureState2Q:
    amp = np.zeros(4, dtype=complex)
    amp[2 * left + right] = 1.0
    return PureState2Q(amp)


def density_from_pure(psi: PureState2Q) -> DensityMatrix4:
    return DensityMatrix4(np.outer(psi.amp, psi.amp.conj()))


def maximally_mixed() -> DensityMatrix4:
    return DensityMatrix4(np.eye(4, dtype=complex) / 4.0)


def schmidt_coefficients(psi: PureState2Q) -> tuple[float, float]:
    """Singular values (s1 >= s2 >= 0) of the 2x2 amplitude matrix.

    Uses s1² + s2² = ‖M‖_F² and s1·s2 = |det M| so the small coefficient
    keeps full relative precision.
    """
    m = psi.amplitude_matrix()
    fro2 = float(np.sum(np.abs(m) ** 2))
    det = abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    disc = math.sqrt(max(fro2 * fro2 - 4.0 * det * det, 0.0))
    s1 = math.sqrt((fro2 + disc) / 2.0)
    s2 = det / s1 if s1 > 0 else 0.0
    return s1, s2
