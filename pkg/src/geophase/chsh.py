"""CHSH statistic, bound classification and angle maximization.

    S = |E(a, b) - E(a, b')| + |E(a', b) + E(a', b')|

Local hidden-variable models obey S <= 2 and quantum states obey
S <= 2√2 (Tsirelson). For a phased singlet (|↑↓⟩ - e^{iφ}|↓↑⟩)/√2 the in-plane
angles (0, π/4, π/2, 3π/4) give S = √2 + √2|cos φ|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from geophase.linalg import tensor_product
from geophase.measurement import MeasurementDirection, joint_expectation, real_expectation
from geophase.qstate import PAULIS, PureState2Q

TSIRELSON = 2.0 * math.sqrt(2.0)
CLASSICAL_BOUND = 2.0
BOUND_TOL = 1e-9

CANONICAL_ANGLES = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)

TWO_PI = 2.0 * math.pi


class Classification(str, Enum):
    NO_VIOLATION = "no_violation"
    VIOLATES_CLASSICAL = "violates_classical"
    EXCEEDS_TSIRELSON = "exceeds_tsirelson"


class Mode(str, Enum):
    IN_PLANE = "in_plane"
    FULL_SPHERE = "full_sphere"


def classify(s: float) -> Classification:
    if s > TSIRELSON + BOUND_TOL:
        return Classification.EXCEEDS_TSIRELSON
    if s > CLASSICAL_BOUND + BOUND_TOL:
        return Classification.VIOLATES_CLASSICAL
    return Classification.NO_VIOLATION


@dataclass(frozen=True)
class ChshAngles:
    """Measurement settings (a, b, a', b').

    ``in_plane`` holds the four x-z plane angles, reduced to [0, 2π), when the
    settings came from angles; it is None for arbitrary Bloch directions.
    """

    directions: tuple[MeasurementDirection, ...]
    in_plane: tuple[float, ...] | None = None

    @classmethod
    def from_angles(cls, alpha: float, beta: float, alpha_p: float, beta_p: float) -> "ChshAngles":
        angles = tuple(float(t) % TWO_PI for t in (alpha, beta, alpha_p, beta_p))
        return cls(tuple(MeasurementDirection.from_angle(t) for t in angles), angles)

    @classmethod
    def from_directions(cls, dirs: Sequence) -> "ChshAngles":
        dirs = tuple(d if isinstance(d, MeasurementDirection) else MeasurementDirection.from_vector(d) for d in dirs)
        if len(dirs) != 4:
            raise ValueError("need exactly four directions")
        return cls(dirs)

    def to_json(self) -> list:
        if self.in_plane is not None:
            return list(self.in_plane)
        return [[d.x, d.y, d.z] for d in self.directions]


@dataclass(frozen=True)
class ChshResult:
    angles: ChshAngles
    e_ab: float
    e_abp: float
    e_apb: float
    e_apbp: float
    s: float
    classification: Classification = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "classification", classify(self.s))

    @property
    def expectations(self) -> tuple[float, float, float, float]:
        return (self.e_ab, self.e_abp, self.e_apb, self.e_apbp)

    def to_dict(self) -> dict:
        return {
            "angles": self.angles.to_json(),
            "expectations": list(self.expectations),
            "s": self.s,
            "classification": self.classification.value,
        }


def s_from_expectations(e_ab: float, e_abp: float, e_apb: float, e_apbp: float) -> float:
    return abs(e_ab - e_abp) + abs(e_apb + e_apbp)


def s_value(psi: PureState2Q, angles: ChshAngles) -> ChshResult:
    """Evaluate S from four operator expectations."""
    a, b, ap, bp = angles.directions
    e = (
        joint_expectation(psi, a, b),
        joint_expectation(psi, a, bp),
        joint_expectation(psi, ap, b),
        joint_expectation(psi, ap, bp),
    )
    return ChshResult(angles, *e, s=s_from_expectations(*e))


def canonical_s(phi: float) -> float:
    """√2 + √2|cos φ|, the value of S at the canonical angles."""
    return math.sqrt(2.0) * (1.0 + abs(math.cos(phi)))


def correlation_matrix(psi: PureState2Q) -> np.ndarray:
    """T[i, j] = ⟨ψ|σ_i ⊗ σ_j|ψ⟩ for i, j in (x, y, z)."""
    t = np.empty((3, 3))
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            t[i, j] = real_expectation(psi, tensor_product(si, sj))
    return t


def horodecki_bound(psi: PureState2Q) -> float:
    """Maximal S over all Bloch directions: 2√(t₁² + t₂²) from the singular values of T."""
    sv = np.linalg.svd(correlation_matrix(psi), compute_uv=False)
    return 2.0 * math.sqrt(sv[0] ** 2 + sv[1] ** 2)


def in_plane_bound(psi: PureState2Q) -> float:
    """Maximal S with all four directions in the x-z plane."""
    t = correlation_matrix(psi)[np.ix_([0, 2], [0, 2])]
    sv = np.linalg.svd(t, compute_uv=False)
    return 2.0 * math.sqrt(sv[0] ** 2 + sv[1] ** 2)


# -- optimizer ---------------------------------------------------------------


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for ``maximize_s``.

    The coarse stage evaluates every combination of ``coarse_grid_points_per_angle``
    settings per measurement direction (evenly spaced angles in-plane, a
    Fibonacci lattice on the sphere). The ``restarts`` best distinct cells
    then seed a compass search that cycles through the coordinates trying
    ±step, and multiplies the step by ``shrink_factor`` once a full cycle
    brings no improvement. ``refinement_iterations`` bounds the number of step
    levels. No randomness is involved.
    """

    coarse_grid_points_per_angle: int = 24
    refinement_iterations: int = 60
    initial_step: float = math.pi / 12
    shrink_factor: float = 0.5
    restarts: int = 8

    def __post_init__(self):
        if self.coarse_grid_points_per_angle < 2:
            raise ValueError("coarse_grid_points_per_angle must be >= 2")
        if self.refinement_iterations < 1 or self.restarts < 1:
            raise ValueError("refinement_iterations and restarts must be positive")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError("shrink_factor must lie in (0, 1)")


_MIN_STEP = 1e-9
_MAX_CYCLES_PER_LEVEL = 200


def _fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(1.0 - z * z)
    az = math.pi * (3.0 - math.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(az), r * np.sin(az), z])


def _grid_seeds(t: np.ndarray, dirs: np.ndarray, count: int) -> list[tuple[float, tuple[int, int, int, int]]]:
    """Best ``count`` grid cells (S, (a, b, a', b')) with distinct (b, b').

    For fixed (b, b') the a- and a'-terms of S separate, so the exact grid
    maximum needs only O(N³) work.
    """
    g = dirs @ t @ dirs.T  # g[a, b] = E(a, b)
    diff = np.abs(g[:, :, None] - g[:, None, :])  # [a, b, b']
    summ = np.abs(g[:, :, None] + g[:, None, :])
    best_a = diff.argmax(axis=0)
    best_ap = summ.argmax(axis=0)
    score = diff.max(axis=0) + summ.max(axis=0)
    flat = np.argsort(-score, axis=None, kind="stable")[:count]
    seeds = []
    for idx in flat:
        b, bp = np.unravel_index(idx, score.shape)
        seeds.append((float(score[b, bp]), (int(best_a[b, bp]), int(b), int(best_ap[b, bp]), int(bp))))
    return seeds


def _compass_search(f, x0: list[float], cfg: OptimizerConfig) -> tuple[float, list[float]]:
    x = list(x0)
    fx = f(x)
    step = cfg.initial_step
    for _ in range(cfg.refinement_iterations):
        for _cycle in range(_MAX_CYCLES_PER_LEVEL):
            improved = False
            for i in range(len(x)):
                for sign in (1.0, -1.0):
                    trial = x.copy()
                    trial[i] += sign * step
                    ft = f(trial)
                    if ft > fx:
                        x, fx = trial, ft
                        improved = True
                        break
            if not improved:
                break
        step *= cfg.shrink_factor
        if step < _MIN_STEP:
            break
    return fx, x


def _in_plane_objective(t: np.ndarray):
    txx, txz, tzx, tzz = float(t[0, 0]), float(t[0, 2]), float(t[2, 0]), float(t[2, 2])

    def e(p, q):
        sp, cp, sq, cq = math.sin(p), math.cos(p), math.sin(q), math.cos(q)
        return sp * sq * txx + sp * cq * txz + cp * sq * tzx + cp * cq * tzz

    def f(x):
        a, b, ap, bp = x
        return abs(e(a, b) - e(a, bp)) + abs(e(ap, b) + e(ap, bp))

    return f


def _sphere_objective(t: np.ndarray):
    tt = [[float(v) for v in row] for row in t]

    def vec(polar, az):
        s = math.sin(polar)
        return (s * math.cos(az), s * math.sin(az), math.cos(polar))

    def apply(v):
        return [r[0] * v[0] + r[1] * v[1] + r[2] * v[2] for r in tt]

    def f(x):
        a, b, ap, bp = (vec(x[2 * k], x[2 * k + 1]) for k in range(4))
        tb, tbp = apply(b), apply(bp)
        d = [tb[i] - tbp[i] for i in range(3)]
        s = [tb[i] + tbp[i] for i in range(3)]
        return abs(a[0] * d[0] + a[1] * d[1] + a[2] * d[2]) + abs(ap[0] * s[0] + ap[1] * s[1] + ap[2] * s[2])

    return f, vec


def maximize_s(psi: PureState2Q, mode: Mode | str = Mode.IN_PLANE, cfg: OptimizerConfig | None = None) -> ChshResult:
    """Maximize S over measurement settings.

    A coarse grid search picks ``cfg.restarts`` starting cells, each of which
    is refined by compass search; the best point over grid and refinements
    is re-evaluated through the operator path. The search is deterministic.

    Parameters
    ----------
    psi : PureState2Q
    mode : Mode or str
        ``"in_plane"`` restricts all four directions to the x-z plane;
        ``"full_sphere"`` searches the whole Bloch sphere.
    cfg : OptimizerConfig, optional
    """
    cfg = cfg or OptimizerConfig()
    mode = Mode(mode)
    t = correlation_matrix(psi)
    n = cfg.coarse_grid_points_per_angle

    if mode is Mode.IN_PLANE:
        thetas = TWO_PI * np.arange(n) / n
        dirs = np.column_stack([np.sin(thetas), np.zeros(n), np.cos(thetas)])
        f = _in_plane_objective(t)
        starts = [
            (score, [float(thetas[k]) for k in cell])
            for score, cell in _grid_seeds(t, dirs, cfg.restarts)
        ]
    else:
        dirs = _fibonacci_sphere(n)
        f, vec = _sphere_objective(t)
        polar = np.arccos(np.clip(dirs[:, 2], -1.0, 1.0))
        az = np.arctan2(dirs[:, 1], dirs[:, 0])
        starts = []
        for score, cell in _grid_seeds(t, dirs, cfg.restarts):
            x = []
            for k in cell:
                x += [float(polar[k]), float(az[k])]
            starts.append((score, x))

    best_f, best_x = -math.inf, None
    for grid_score, x0 in starts:
        for fx, x in ((f(x0), x0), _compass_search(f, x0, cfg)):
            if fx > best_f:
                best_f, best_x = fx, x

    if mode is Mode.IN_PLANE:
        angles = ChshAngles.from_angles(*best_x)
    else:
        angles = ChshAngles.from_directions(
            [MeasurementDirection(*vec(best_x[2 * k], best_x[2 * k + 1])) for k in range(4)]
        )
    return s_value(psi, angles)
