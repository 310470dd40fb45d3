"""Entanglement and distance measures for two-qubit states.

Fidelity follows the amplitude convention F = |⟨a|b⟩| (Uhlmann:
tr √(√ρ σ √ρ), no square), so the Bures distance is √(2(1 - F)) and ranges
over [0, √2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geophase.errors import DomainError
from geophase.linalg import hermitian_eigen, noise_floor, psd_sqrt, tensor_product
from geophase.phases import PhaseSetup, apply_phase
from geophase.qstate import SIGMA_Y, DensityMatrix4, PureState2Q, singlet

SIGMA_YY = tensor_product(SIGMA_Y, SIGMA_Y)

# Radicands/arguments this far outside their domain are treated as roundoff.
_SLACK = 1e-12


def _check_unit_interval(x: float, name: str) -> float:
    if not (-_SLACK <= x <= 1.0 + _SLACK):
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")
    return min(max(x, 0.0), 1.0)


def spin_flip(psi: PureState2Q) -> np.ndarray:
    """(σ_y ⊗ σ_y)|ψ*⟩ as a raw amplitude vector."""
    return SIGMA_YY @ psi.amp.conj()


def concurrence_pure(psi: PureState2Q) -> float:
    """|⟨ψ|ψ̃⟩| with ψ̃ the spin-flipped state."""
    c = abs(np.vdot(psi.amp, spin_flip(psi)))
    return min(c, 1.0)


def concurrence_mixed(rho: DensityMatrix4) -> float:
    """Wootters concurrence max(0, λ₁ - λ₂ - λ₃ - λ₄).

    The λᵢ are square roots of the eigenvalues of ρρ̃, obtained from the
    Hermitian matrix √ρ ρ̃ √ρ that shares its spectrum.
    """
    root = psd_sqrt(rho.mat)
    rho_tilde = SIGMA_YY @ rho.mat.conj() @ SIGMA_YY
    m = root @ rho_tilde @ root
    w, _ = hermitian_eigen(0.5 * (m + m.conj().T))
    w = np.where(w <= noise_floor(w), 0.0, w)
    lam = np.sort(np.sqrt(w))[::-1]
    return float(min(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]), 1.0))


def binary_entropy(x: float) -> float:
    """h(x) = -x log₂x - (1-x) log₂(1-x), with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy needs 0 <= x <= 1, got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def eof_from_concurrence(c: float) -> float:
    """Entanglement of formation h((1 + √(1 - C²))/2)."""
    c = _check_unit_interval(c, "concurrence")
    return binary_entropy((1.0 + math.sqrt(max(1.0 - c * c, 0.0))) / 2.0)


def fidelity_pure(a: PureState2Q, b: PureState2Q) -> float:
    """|⟨a|b⟩|.

    Evaluated as 1 - ½ min_θ ‖a - e^{iθ} b‖², which equals the overlap for
    unit vectors but keeps full precision near F = 1; states that differ
    only by a global phase give exactly 1. Arguments are put in a fixed
    order first so the result is exactly symmetric.
    """
    if a.amp.tobytes() > b.amp.tobytes():
        a, b = b, a
    u = a.amp / np.linalg.norm(a.amp)
    v = b.amp / np.linalg.norm(b.amp)
    z = np.vdot(v, u)
    align = z / abs(z) if z != 0 else 1.0
    d2 = float(np.sum(np.abs(u - align * v) ** 2))
    return min(max(1.0 - 0.5 * d2, 0.0), 1.0)


def fidelity_mixed(rho: DensityMatrix4, sigma: DensityMatrix4) -> float:
    """Uhlmann fidelity tr √(√ρ σ √ρ)."""
    root = psd_sqrt(rho.mat)
    m = root @ sigma.mat @ root
    inner = psd_sqrt(0.5 * (m + m.conj().T))
    return float(min(np.trace(inner).real, 1.0))


def bures_distance(f: float) -> float:
    f = _check_unit_interval(f, "fidelity")
    return math.sqrt(2.0 * (1.0 - f))


@dataclass(frozen=True)
class MeasureReport:
    setup: PhaseSetup
    concurrence: float
    eof: float
    fidelity: float
    bures: float

    def to_dict(self) -> dict:
        return {
            "setup": self.setup.to_dict(),
            "concurrence": self.concurrence,
            "eof": self.eof,
            "fidelity": self.fidelity,
            "bures": self.bures,
        }


def measure_report(setup: PhaseSetup, initial: PureState2Q | None = None) -> MeasureReport:
    """Send ``initial`` (the singlet by default) through ``setup`` and measure the result."""
    initial = initial if initial is not None else singlet()
    final = apply_phase(initial, setup)
    c = concurrence_pure(final)
    f = fidelity_pure(initial, final)
    return MeasureReport(setup, c, eof_from_concurrence(c), f, bures_distance(f))
