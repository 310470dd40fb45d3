"""Command line interface.

All angles and phases are in radians. Exit codes: 0 success, 2 usage error,
3 physics invariant violated (S above the Tsirelson bound), 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from geophase import chsh, harness, measures, phases
from geophase.errors import ConfigError
from geophase.qstate import density_from_pure, singlet

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PHYSICS = 3
EXIT_IO = 4

# flag name -> (setup kind, constructor keyword)
SETUP_PARAMS = {
    "mu": ("ac", "mu"),
    "lambda1": ("ac", "lambda1"),
    "lambda2": ("ac", "lambda2"),
    "d": ("hmw", "d"),
    "lambda_b": ("hmw", "lambda_b"),
    "gamma": ("berry", "gamma"),
    "g": ("dab", "g"),
    "phi_e": ("dab", "phi_e"),
    "phi_b": ("ab", "phi_b"),
}

# Flags whose values may legitimately start with '-'.
_SIGNED_VALUE_FLAGS = {"--p1", "--p2", "--angles"} | {"--" + k.replace("_", "-") for k in SETUP_PARAMS}


def _fmt(v: float) -> str:
    return format(v, ".10g")


def _table(rows: Sequence[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v:>18}" for k, v in rows)


def _parse_range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, count = text.split(":")
        return float(lo), float(hi), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}") from None


def _parse_angles(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"angles must be numbers, got {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("expected four finite angles a,b,a',b'")
    return vals


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text!r}")
    return v


def _add_common(p: argparse.ArgumentParser, with_kind: bool = True) -> None:
    if with_kind:
        p.add_argument("--setup", choices=sorted(phases.SETUP_TYPES), help="phase setup kind")
    g = p.add_argument_group("setup parameters (natural units, radians; missing ones default to 0)")
    g.add_argument("--mu", type=_finite, help="AC: magnetic dipole moment")
    g.add_argument("--lambda1", type=_finite, help="AC: left line-charge density")
    g.add_argument("--lambda2", type=_finite, help="AC: right line-charge density")
    g.add_argument("--d", type=_finite, help="HMW: electric dipole moment")
    g.add_argument("--lambda-b", dest="lambda_b", type=_finite, help="HMW: magnetic line-charge density")
    g.add_argument("--gamma", type=_finite, help="Berry: phase")
    g.add_argument("--g", type=_finite, help="DAB: magnetic charge")
    g.add_argument("--phi-e", dest="phi_e", type=_finite, help="DAB: electric flux phase per unit charge")
    g.add_argument("--phi-b", dest="phi_b", type=_finite, help="AB: magnetic flux phase")
    p.add_argument("--config", help="JSON file whose keys mirror the flag names; flags win")
    p.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="Entangled spin pairs under AB/AC/HMW/Berry/DAB geometric phases. All angles in radians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="phase the singlet and print the resulting state")
    _add_common(p)

    p = sub.add_parser("chsh", help="evaluate or maximize the CHSH statistic")
    _add_common(p)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--angles", type=_parse_angles, help="in-plane angles a,b,a',b' (radians)")
    how.add_argument("--canonical", action="store_true", help="use angles (0, pi/4, pi/2, 3pi/4)")
    how.add_argument("--optimize", choices=["in-plane", "sphere"], help="maximize S numerically")
    p.add_argument("--grid-points", type=int, default=24, help="coarse grid points per angle")
    p.add_argument("--restarts", type=int, default=8, help="refinement restarts")

    p = sub.add_parser("measures", help="concurrence, EoF, fidelity and Bures distance")
    _add_common(p)

    p = sub.add_parser("sweep", help="fidelity/Bures sweep over a parameter grid")
    p.add_argument("--setup", choices=["ac", "hmw"], default="ac")
    p.add_argument("--p1", type=_parse_range, default=(0.0, 4.0, 201), help="mu or d as min:max:count")
    p.add_argument("--p2", type=_parse_range, default=(-4.0, 4.0, 201), help="lambda_E or lambda_B as min:max:count")
    p.add_argument("--quantity", choices=["fidelity", "bures", "both"], default="both")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--json", action="store_true", help="print the summary as JSON")

    p = sub.add_parser("table1", help="five-setup summary of C, EoF, F, D_B")
    _add_common(p, with_kind=False)
    p.add_argument("--format", choices=["csv", "md"], default="md")
    return parser


def _join_signed_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--p2 -4:4:201`` into ``--p2=-4:4:201`` so argparse accepts it."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED_VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _load_config(args, parser) -> dict:
    if not getattr(args, "config", None):
        return {}
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(data, dict):
        parser.error("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _param_values(args, parser) -> dict:
    values = _load_config(args, parser)
    for name in list(SETUP_PARAMS) + ["setup"]:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    return values


def _make_setup(kind: str, values: dict) -> phases.PhaseSetup:
    params = {kw: float(values.get(name, 0.0)) for name, (k, kw) in SETUP_PARAMS.items() if k == kind}
    return phases.setup_from_dict({"kind": kind, **params})


def _setup_from_args(args, parser) -> phases.PhaseSetup:
    values = _param_values(args, parser)
    kind = values.get("setup")
    if kind is None:
        parser.error("--setup is required")
    try:
        return _make_setup(str(kind).lower(), values)
    except (ConfigError, TypeError, ValueError) as exc:
        parser.error(str(exc))


def cmd_state(args, parser) -> int:
    setup = _setup_from_args(args, parser)
    psi = phases.apply_phase(singlet(), setup)
    dec = phases.decompose(setup)
    if args.json:
        print(json.dumps({
            "setup": setup.to_dict(),
            "amplitudes": psi.to_json(),
            "global_phase": dec.global_phase,
            "relative_phase": dec.relative_phase,
            "density_matrix": density_from_pure(psi).to_json(),
        }))
        return EXIT_OK
    labels = ("|uu>", "|ud>", "|du>", "|dd>")
    rows = [(f"amp {lab}", f"{_fmt(z.real)} {format(z.imag, '+.10g')}j") for lab, z in zip(labels, psi.amp)]
    rows += [("global_phase", _fmt(dec.global_phase)), ("relative_phase", _fmt(dec.relative_phase))]
    print(f"setup: {setup.to_dict()}")
    print(_table(rows))
    return EXIT_OK


def cmd_chsh(args, parser) -> int:
    setup = _setup_from_args(args, parser)
    psi = phases.apply_phase(singlet(), setup)
    if args.optimize:
        try:
            cfg = chsh.OptimizerConfig(coarse_grid_points_per_angle=args.grid_points, restarts=args.restarts)
        except ValueError as exc:
            parser.error(str(exc))
        mode = chsh.Mode.IN_PLANE if args.optimize == "in-plane" else chsh.Mode.FULL_SPHERE
        result = chsh.maximize_s(psi, mode, cfg)
    else:
        angles = chsh.CANONICAL_ANGLES if args.canonical else args.angles
        result = chsh.s_value(psi, chsh.ChshAngles.from_angles(*angles))
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        names = ("E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')")
        rows = [(n, _fmt(v)) for n, v in zip(names, result.expectations)]
        rows += [("S", _fmt(result.s)), ("classification", result.classification.value)]
        print(_table(rows))
    if result.classification is chsh.Classification.EXCEEDS_TSIRELSON:
        print(f"error: S = {result.s!r} exceeds the Tsirelson bound", file=sys.stderr)
        return EXIT_PHYSICS
    return EXIT_OK


def cmd_measures(args, parser) -> int:
    report = measures.measure_report(_setup_from_args(args, parser))
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(f"setup: {report.setup.to_dict()}")
        print(_table([(k, _fmt(getattr(report, k))) for k in ("concurrence", "eof", "fidelity", "bures")]))
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    try:
        grid = harness.SweepGrid(args.setup, args.p1, args.p2, args.quantity)
    except ConfigError as exc:
        parser.error(str(exc))
    cells = harness.run_sweep(grid)
    try:
        harness.write_sweep(args.out, grid, cells, args.format)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    summary = harness.sweep_summary(cells)
    if args.quantity != "both":
        summary = {k: v for k, v in summary.items() if k == "cells" or k.startswith(args.quantity)}
    if args.json:
        print(json.dumps({"out": args.out, **summary}))
    else:
        print(f"wrote {args.out}")
        print(_table([(k, str(v) if k == "cells" else _fmt(v)) for k, v in summary.items()]))
    return EXIT_OK


def cmd_table1(args, parser) -> int:
    values = _param_values(args, parser)
    overrides = [
        _make_setup(kind, values)
        for kind in phases.SETUP_TYPES
        if any(name in values for name, (k, _) in SETUP_PARAMS.items() if k == kind)
    ]
    reports = harness.table1_report(overrides)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports]))
    elif args.format == "csv":
        sys.stdout.write(harness.table1_to_csv(reports))
    else:
        sys.stdout.write(harness.table1_to_markdown(reports))
    return EXIT_OK


COMMANDS = {
    "state": cmd_state,
    "chsh": cmd_chsh,
    "measures": cmd_measures,
    "sweep": cmd_sweep,
    "table1": cmd_table1,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_signed_values(argv))
    return COMMANDS[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
