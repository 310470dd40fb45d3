"""Geometric phases picked up by a spin pair in hybrid interferometer setups.

Five setups are modelled:

* ``ABSetup``    - charge around a magnetic flux (global phase only)
* ``ACSetup``    - magnetic dipole around two electric line charges
* ``HMWSetup``   - electric dipole around a magnetic line charge
* ``BerrySetup`` - a Berry phase supplied directly
* ``DABSetup``   - magnetic charge around an electric flux (global phase only)

For AC, the left arm contributes e^{∓iμλ₁} and the right arm e^{∓iμλ₂} to
spin up/down respectively. HMW and Berry act the same way on the left arm
with a single effective phase (dλ_B or γ). All parameters are in natural
units and every product is an angle in radians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import ClassVar, Union

import numpy as np

from geophase.errors import ConfigError
from geophase.qstate import PureState2Q

EQUIVALENCE_TOL = 1e-10


def wrap_angle(phi: float) -> float:
    """Wrap an angle into (-π, π]."""
    w = math.pi - math.fmod(math.pi - phi, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    elif w > math.pi:
        w -= 2.0 * math.pi
    return w


@dataclass(frozen=True)
class _Setup:
    kind: ClassVar[str]

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise ConfigError(f"{self.kind}: parameter {name} must be finite")

    def to_dict(self) -> dict:
        return {"kind": self.kind, **asdict(self)}

    def arm_phases(self) -> tuple[float, float]:
        """Phase magnitudes (left, right) per arm; spin-up gets -θ, spin-down +θ."""
        return 0.0, 0.0

    def global_phase(self) -> float:
        return 0.0


@dataclass(frozen=True)
class ABSetup(_Setup):
    phi_b: float
    kind: ClassVar[str] = "ab"

    def global_phase(self) -> float:
        return -self.phi_b


@dataclass(frozen=True)
class ACSetup(_Setup):
    mu: float
    lambda1: float
    lambda2: float
    kind: ClassVar[str] = "ac"

    @property
    def lambda_e(self) -> float:
        return self.lambda1 - self.lambda2

    def arm_phases(self) -> tuple[float, float]:
        return self.mu * self.lambda1, self.mu * self.lambda2


@dataclass(frozen=True)
class HMWSetup(_Setup):
    d: float
    lambda_b: float
    kind: ClassVar[str] = "hmw"

    def arm_phases(self) -> tuple[float, float]:
        return self.d * self.lambda_b, 0.0


@dataclass(frozen=True)
class BerrySetup(_Setup):
    gamma: float
    kind: ClassVar[str] = "berry"

    def arm_phases(self) -> tuple[float, float]:
        return self.gamma, 0.0


@dataclass(frozen=True)
class DABSetup(_Setup):
    g: float
    phi_e: float
    kind: ClassVar[str] = "dab"

    def global_phase(self) -> float:
        return -self.g * self.phi_e


PhaseSetup = Union[ABSetup, ACSetup, HMWSetup, BerrySetup, DABSetup]

SETUP_TYPES: dict[str, type] = {
    cls.kind: cls for cls in (ABSetup, ACSetup, HMWSetup, BerrySetup, DABSetup)
}


def setup_from_dict(data: dict) -> PhaseSetup:
    """Parse ``{"kind": ..., <parameters>}`` into a setup instance."""
    data = dict(data)
    kind = str(data.pop("kind", "")).lower()
    try:
        cls = SETUP_TYPES[kind]
    except KeyError:
        raise ConfigError(f"unknown setup kind {kind!r}; expected one of {sorted(SETUP_TYPES)}") from None
    try:
        return cls(**{k: float(v) for k, v in data.items()})
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {kind}: {exc}") from None


@dataclass(frozen=True)
class PhaseDecomposition:
    global_phase: float
    relative_phase: float

    def to_dict(self) -> dict:
        return {"global_phase": self.global_phase, "relative_phase": self.relative_phase}


def _spin_sign(bit: int) -> int:
    return -1 if bit == 0 else 1


def apply_phase(psi: PureState2Q, setup: PhaseSetup) -> PureState2Q:
    """Multiply each basis amplitude by the phase factor its arm/spin picks up.

    Basis index (l, r) gains exp(i(s_l θ_L + s_r θ_R + θ_global)) where s is
    -1 for ↑ and +1 for ↓. Every factor has unit modulus, so the norm is
    untouched.
    """
    theta_l, theta_r = setup.arm_phases()
    glob = setup.global_phase()
    factors = np.array(
        [
            cmath.exp(1j * (_spin_sign(l) * theta_l + _spin_sign(r) * theta_r + glob))
            for l in (0, 1)
            for r in (0, 1)
        ]
    )
    return PureState2Q(psi.amp * factors)


def decompose(setup: PhaseSetup) -> PhaseDecomposition:
    """Split the phase acquired by the singlet into global and relative parts.

    The singlet maps to e^{i·global}(|↑↓⟩ - e^{i·relative}|↓↑⟩)/√2. The
    relative phase is wrapped into (-π, π]; the global phase is not wrapped.
    """
    theta_l, theta_r = setup.arm_phases()
    diff = theta_l - theta_r
    return PhaseDecomposition(
        global_phase=setup.global_phase() - diff,
        relative_phase=wrap_angle(2.0 * diff),
    )


def decompose_state(psi: PureState2Q) -> PhaseDecomposition:
    """Read (global, relative) back off a state of the form e^{ig}(|↑↓⟩ - e^{iφ}|↓↑⟩)/√2."""
    a, b = psi.amp[1], psi.amp[2]
    if abs(abs(a) - abs(b)) > 1e-9 or abs(psi.amp[0]) > 1e-9 or abs(psi.amp[3]) > 1e-9:
        raise ValueError("state is not a phased singlet")
    return PhaseDecomposition(
        global_phase=cmath.phase(a),
        relative_phase=wrap_angle(cmath.phase(-b / a)),
    )


def phased_singlet(phi: float) -> PureState2Q:
    """(|↑↓⟩ - e^{iφ}|↓↑⟩)/√2."""
    s = 1.0 / math.sqrt(2.0)
    return PureState2Q(np.array([0.0, s, -s * cmath.exp(1j * phi), 0.0]))


def phase_equivalent(a: PureState2Q, b: PureState2Q) -> bool:
    """True when the two states differ at most by a global phase."""
    return abs(a.inner(b)) >= 1.0 - EQUIVALENCE_TOL
