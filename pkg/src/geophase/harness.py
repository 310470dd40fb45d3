"""Parameter sweeps, the five-setup summary table and seeded random states.

Sweep CSV layout (byte exact)::

    p1,p2,fidelity,bures\\n
    <p1>,<p2>,<F>,<D>\\n        one row per cell, p1 outer, both ascending

Every number is printed with 9 significant digits (``format(v, ".9g")``).
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from geophase.errors import ConfigError
from geophase.measures import MeasureReport, bures_distance, fidelity_pure, measure_report
from geophase.phases import (
    ABSetup,
    ACSetup,
    BerrySetup,
    DABSetup,
    HMWSetup,
    PhaseSetup,
    apply_phase,
)
from geophase.qstate import PureState2Q, singlet

SWEEP_HEADER = "p1,p2,fidelity,bures"
TABLE1_HEADER = "setup,concurrence,eof,fidelity,bures"
CSV_DIGITS = 9

SETUP_LABELS = {"ab": "AB", "ac": "AC", "hmw": "HMW", "berry": "Berry", "dab": "DAB"}
PARAM_NAMES = {"ac": ("mu", "lambda_e"), "hmw": ("d", "lambda_b")}


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular grid over (μ, λ_E) for AC or (d, λ_B) for HMW.

    Ranges are ``(min, max, count)`` with inclusive endpoints. ``min == max``
    is allowed and yields a constant axis.
    """

    setup_kind: str = "ac"
    param1_range: tuple[float, float, int] = (0.0, 4.0, 201)
    param2_range: tuple[float, float, int] = (-4.0, 4.0, 201)
    quantity: str = "both"

    def __post_init__(self):
        if self.setup_kind not in PARAM_NAMES:
            raise ConfigError(f"sweep setup must be 'ac' or 'hmw', got {self.setup_kind!r}")
        if self.quantity not in ("fidelity", "bures", "both"):
            raise ConfigError(f"unknown quantity {self.quantity!r}")
        for name in ("param1_range", "param2_range"):
            lo, hi, count = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ConfigError(f"{name}: bounds must be finite")
            if int(count) != count or count < 2:
                raise ConfigError(f"{name}: count must be an integer >= 2")
            if lo > hi:
                raise ConfigError(f"{name}: min {lo} exceeds max {hi}")

    def axis(self, which: int) -> np.ndarray:
        lo, hi, count = self.param1_range if which == 1 else self.param2_range
        return np.linspace(lo, hi, int(count))

    def setup_at(self, p1: float, p2: float) -> PhaseSetup:
        if self.setup_kind == "ac":
            return ACSetup(mu=p1, lambda1=p2, lambda2=0.0)
        return HMWSetup(d=p1, lambda_b=p2)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["param_names"] = list(PARAM_NAMES[self.setup_kind])
        return d


@dataclass(frozen=True)
class SweepCell:
    p1: float
    p2: float
    fidelity: float
    bures: float


def run_sweep(grid: SweepGrid) -> list[SweepCell]:
    """Evaluate fidelity and Bures distance on every grid cell, p1 outer.

    Each cell goes through the full pipeline: phase the singlet, take its
    overlap with the unphased singlet, convert to a Bures distance.
    """
    initial = singlet()
    cells = []
    for p1 in grid.axis(1):
        for p2 in grid.axis(2):
            final = apply_phase(initial, grid.setup_at(float(p1), float(p2)))
            f = fidelity_pure(initial, final)
            cells.append(SweepCell(float(p1), float(p2), f, bures_distance(f)))
    return cells


def _fmt(v: float) -> str:
    return format(v, f".{CSV_DIGITS}g")


def sweep_to_csv(cells: Iterable[SweepCell]) -> str:
    buf = io.StringIO()
    buf.write(SWEEP_HEADER + "\n")
    for c in cells:
        buf.write(f"{_fmt(c.p1)},{_fmt(c.p2)},{_fmt(c.fidelity)},{_fmt(c.bures)}\n")
    return buf.getvalue()


def sweep_from_csv(text: str) -> list[SweepCell]:
    lines = text.split("\n")
    if lines[0] != SWEEP_HEADER:
        raise ValueError(f"unexpected header {lines[0]!r}")
    return [SweepCell(*map(float, line.split(","))) for line in lines[1:] if line]


def sweep_to_json(grid: SweepGrid, cells: Sequence[SweepCell]) -> str:
    return json.dumps(
        {"grid": grid.to_dict(), "cells": [[c.p1, c.p2, c.fidelity, c.bures] for c in cells]}
    )


def write_sweep(path: str, grid: SweepGrid, cells: Sequence[SweepCell], fmt: str = "csv") -> None:
    text = sweep_to_csv(cells) if fmt == "csv" else sweep_to_json(grid, cells) + "\n"
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def sweep_summary(cells: Sequence[SweepCell]) -> dict:
    f = [c.fidelity for c in cells]
    d = [c.bures for c in cells]
    return {
        "cells": len(cells),
        "fidelity_min": min(f),
        "fidelity_max": max(f),
        "bures_min": min(d),
        "bures_max": max(d),
    }


# -- summary table -------------------------------------------------------------

DEFAULT_TABLE1_SETUPS: tuple[PhaseSetup, ...] = (
    ABSetup(phi_b=math.pi / 4),
    ACSetup(mu=1.0, lambda1=math.pi / 3, lambda2=0.0),
    HMWSetup(d=1.0, lambda_b=math.pi / 4),
    BerrySetup(gamma=math.pi / 6),
    DABSetup(g=1.0, phi_e=math.pi / 4),
)


def table1_report(setups: Sequence[PhaseSetup] | None = None) -> list[MeasureReport]:
    """One MeasureReport per setup kind, in AB, AC, HMW, Berry, DAB order.

    ``setups`` may override any subset of the defaults; entries are matched
    by kind.
    """
    chosen = {s.kind: s for s in DEFAULT_TABLE1_SETUPS}
    for s in setups or ():
        chosen[s.kind] = s
    return [measure_report(chosen[k]) for k in SETUP_LABELS]


def table1_to_csv(reports: Sequence[MeasureReport]) -> str:
    rows = [TABLE1_HEADER]
    for r in reports:
        vals = ",".join(format(v, ".10g") for v in (r.concurrence, r.eof, r.fidelity, r.bures))
        rows.append(f"{SETUP_LABELS[r.setup.kind]},{vals}")
    return "\n".join(rows) + "\n"


def table1_to_markdown(reports: Sequence[MeasureReport]) -> str:
    cols = ["Setup", "Concurrence", "EoF", "Fidelity", "Bures"]
    body = [
        [SETUP_LABELS[r.setup.kind]] + [format(v, ".10g") for v in (r.concurrence, r.eof, r.fidelity, r.bures)]
        for r in reports
    ]
    widths = [max(len(row[i]) for row in [cols] + body) for i in range(len(cols))]

    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    out = [line(cols), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out += [line(row) for row in body]
    return "\n".join(out) + "\n"


# -- random states -----------------------------------------------------------------


def random_pure_state(seed: int) -> PureState2Q:
    """Haar-random two-qubit pure state, reproducible from ``seed``.

    Generator: numpy ``Generator(PCG64(seed))``. Eight draws from
    ``standard_normal`` give the real parts (first four) and imaginary parts
    (last four) of the amplitudes, which are then divided by their norm.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal(8)
    return PureState2Q.normalized(z[:4] + 1j * z[4:])
