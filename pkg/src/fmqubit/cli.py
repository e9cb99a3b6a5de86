"""Command-line front end.

    fmqubit simulate [CONFIG] [--preset NAME] -o DIR
    fmqubit threshold [CONFIG] [--preset lowT|midT|highT] [--alpha-lo A --alpha-hi B]
    fmqubit sweep [CONFIG] --param PATH=V1,V2,... [--param ...] -o DIR
    fmqubit preset list

Every subcommand accepts ``--print-config`` to show the resolved configuration
and exit. Exit codes: 0 ok, 2 bad configuration or sweep spec, 3 solver
failure, 4 threshold bracket or grid failure. ``FMQUBIT_WORKERS`` sets the
number of processes used for sweep points (default 1).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from .analysis import BracketError, ThresholdError, alpha_threshold, coherence_time
from .config import ConfigError, SimulationConfig, config_to_dict, set_path, validate
from .dephasing import QuadratureError
from .dissipative import SolverError
from .dynamics import positivity_audit, simulate
from .io import fmt, load_scenario, scenario_to_doc, write_manifest, write_trajectory_csv
from .presets import THRESHOLD_PRESETS, get_preset, preset_names

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_THRESHOLD = 4

WORKERS_ENV = "FMQUBIT_WORKERS"
CALIBRATION_NOTE = (
    "omega_c/gamma is a free calibration of the dephasing bath; absolute alpha_th values depend on it"
)


class UsageError(Exception):
    """Bad command-line input that maps to exit code 2."""


def _now_utc() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _worker_count(flag: Optional[int]) -> int:
    if flag is not None:
        return max(1, flag)
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _resolve_runs(args) -> tuple[dict[str, SimulationConfig], str, Optional[str]]:
    """Scenario from ``--preset`` or a config file (defaults if neither)."""
    if args.preset and args.config:
        raise UsageError("give either a config file or --preset, not both")
    if args.preset:
        try:
            runs = get_preset(args.preset)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return runs, args.preset, args.preset
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise UsageError(f"config file not found: {path}")
        return load_scenario(path), path.stem, None
    return {"run": SimulationConfig()}, "run", None


def _validated(runs: dict[str, SimulationConfig]) -> dict[str, SimulationConfig]:
    diags: list[tuple[str, str]] = []
    out = {}
    for label, cfg in runs.items():
        try:
            out[label] = validate(cfg)
        except ConfigError as exc:
            prefix = "" if len(runs) == 1 else f"runs.{label}."
            diags.extend((prefix + p, m) for p, m in exc.diagnostics)
    if diags:
        raise ConfigError(diags)
    return out


def _print_doc(doc: Any) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _single(runs: dict[str, SimulationConfig], what: str, label: Optional[str]) -> SimulationConfig:
    if label is not None:
        if label not in runs:
            raise UsageError(f"run {label!r} not in scenario; available: {', '.join(runs)}")
        return runs[label]
    if len(runs) != 1:
        raise UsageError(f"{what} needs a single configuration; pick one with --run ({', '.join(runs)})")
    return next(iter(runs.values()))


# ---------------------------------------------------------------- simulate


def cmd_simulate(args) -> int:
    runs, prefix, preset = _resolve_runs(args)
    if args.print_config:
        _print_doc(scenario_to_doc(runs, preset))
        return EXIT_OK
    runs = _validated(runs)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    started, t0 = _now_utc(), time.perf_counter()
    written = []
    summary = {}
    for label, cfg in runs.items():
        res = simulate(cfg)
        name = f"{prefix}.csv" if (len(runs) == 1 and preset is None) else f"{prefix}_{label}.csv"
        written.append(write_trajectory_csv(res, outdir / name))
        audit = positivity_audit(res.qubit)
        summary[label] = {
            "t_c": coherence_time(res.qubit.times, res.qubit.coherence_abs, kind=cfg.numeric.envelope_kind),
            "positivity_ok": audit.ok,
            "worst_positivity_margin": audit.worst_margin,
        }
    manifest = write_manifest(
        outdir / f"{prefix}.manifest.json",
        "simulate",
        runs,
        written,
        started,
        time.perf_counter() - t0,
        preset=preset,
        extra={"scalars": summary},
    )
    for p in written:
        print(p)
    print(manifest)
    return EXIT_OK


# ---------------------------------------------------------------- threshold


def _threshold_doc(res, cfg: SimulationConfig) -> dict[str, Any]:
    return {
        "schema": "fmqubit.threshold/1",
        "alpha_th": res.alpha_th,
        "t_c_driven": res.t_c_driven,
        "t_c_undriven": res.t_c_undriven,
        "iterations": res.iterations,
        "bracket": list(res.bracket),
        "converged_on": res.converged_on,
        "calibration": {"omega_c_over_gamma": cfg.dephasing.omega_c_over_gamma, "note": CALIBRATION_NOTE},
        "trace": [
            {"alpha": it.alpha, "t_c_driven": it.t_c_driven, "t_c_undriven": it.t_c_undriven,
             "h": it.h if math.isfinite(it.h) else ("inf" if it.h > 0 else "-inf")}
            for it in res.trace
        ],
    }


def cmd_threshold(args) -> int:
    if args.preset and args.preset not in THRESHOLD_PRESETS:
        raise UsageError(f"threshold presets are {', '.join(THRESHOLD_PRESETS)}; got {args.preset!r}")
    runs, _, preset = _resolve_runs(args)
    if args.print_config:
        _print_doc(scenario_to_doc(runs, preset))
        return EXIT_OK
    cfg = validate(_single(runs, "threshold", args.run))
    lo = args.alpha_lo if args.alpha_lo is not None else 1e-3
    hi = args.alpha_hi if args.alpha_hi is not None else 2.0
    try:
        res = alpha_threshold(cfg, alpha_bracket=(lo, hi), alpha_tol=args.alpha_tol, match_rtol=args.match_rtol)
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"h(alpha_lo={lo:g}) = {exc.h_lo}", file=sys.stderr)
        print(f"h(alpha_hi={hi:g}) = {exc.h_hi}", file=sys.stderr)
        return EXIT_THRESHOLD
    doc = _threshold_doc(res, cfg)
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def _parse_values(spec: str, where: str) -> list[float]:
    spec = spec.strip()
    if not spec:
        raise UsageError(f"{where}: empty value list")
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"{where}: range must be start:stop:num, got {spec!r}")
        try:
            start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"{where}: malformed range {spec!r}") from None
        if num < 1:
            raise UsageError(f"{where}: range needs num >= 1")
        return [float(v) for v in np.linspace(start, stop, num)]
    try:
        return [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{where}: malformed value list {spec!r}") from None


def _sweep_axes(args) -> list[tuple[str, list[float]]]:
    axes: list[tuple[str, list[float]]] = []
    for item in args.param or []:
        if "=" not in item:
            raise UsageError(f"--param expects PATH=VALUES, got {item!r}")
        path, vals = item.split("=", 1)
        axes.append((path.strip(), _parse_values(vals, f"--param {path.strip()}")))
    if args.spec:
        doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        entries = doc.get("parameters") if isinstance(doc, dict) else None
        if not isinstance(entries, list):
            raise UsageError("sweep spec must be an object with a 'parameters' list")
        for k, e in enumerate(entries):
            where = f"parameters[{k}]"
            if not isinstance(e, dict) or "path" not in e:
                raise UsageError(f"{where}: needs 'path' and 'values' or 'start'/'stop'/'num'")
            if "values" in e:
                vals = e["values"]
                if not isinstance(vals, list) or not vals:
                    raise UsageError(f"{where}: empty value list")
                try:
                    vals = [float(v) for v in vals]
                except (TypeError, ValueError):
                    raise UsageError(f"{where}: values must be numbers") from None
            else:
                try:
                    vals = [float(v) for v in np.linspace(float(e["start"]), float(e["stop"]), int(e["num"]))]
                except (KeyError, TypeError, ValueError):
                    raise UsageError(f"{where}: needs 'values' or numeric 'start'/'stop'/'num'") from None
                if not vals:
                    raise UsageError(f"{where}: empty value list")
            axes.append((str(e["path"]), vals))
    if not axes:
        raise UsageError("sweep needs at least one parameter")
    if len(axes) > 2:
        raise UsageError(f"sweep takes one or two parameters, got {len(axes)}")
    if len({p for p, _ in axes}) != len(axes):
        raise UsageError("sweep parameters must be distinct")
    return axes


def _run_point(cfg: SimulationConfig):
    res = simulate(cfg)
    q = res.qubit
    t_c = coherence_time(q.times, q.coherence_abs, kind=cfg.numeric.envelope_kind)
    audit = positivity_audit(q)
    scalars = {
        "t_c": math.nan if t_c is None else t_c,
        "coherence_abs_final": float(q.coherence_abs[-1]),
        "pe_final": float(q.pe[-1]),
        "positivity_worst_margin": audit.worst_margin,
    }
    return res, scalars


def cmd_sweep(args) -> int:
    runs, prefix, preset = _resolve_runs(args)
    base = _single(runs, "sweep", args.run)
    axes = _sweep_axes(args)
    paths = [p for p, _ in axes]
    points = [dict(zip(paths, combo)) for combo in itertools.product(*(v for _, v in axes))]
    configs = [set_path(base, pt) for pt in points]
    if args.print_config:
        _print_doc(scenario_to_doc({f"point_{k:03d}": c for k, c in enumerate(configs)}, preset))
        return EXIT_OK
    configs = list(_validated({f"point_{k:03d}": c for k, c in enumerate(configs)}).values())
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    workers = _worker_count(args.workers)
    started, t0 = _now_utc(), time.perf_counter()
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, configs))
    else:
        results = [_run_point(c) for c in configs]
    # all writing happens here, in point order
    written = []
    long_path = outdir / "sweep.csv"
    with long_path.open("w", encoding="utf-8", newline="\n") as fh:
        first = True
        for k, ((res, _), pt) in enumerate(zip(results, points)):
            traj = write_trajectory_csv(res, outdir / f"point_{k:03d}.csv", extra=[(p, pt[p]) for p in paths])
            written.append(traj)
            lines = traj.read_text(encoding="utf-8").splitlines()
            if first:
                fh.write("point," + lines[0] + "\n")
                first = False
            for line in lines[1:]:
                fh.write(f"{k}," + line + "\n")
    scalars_path = outdir / "sweep_scalars.csv"
    with scalars_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("point," + ",".join(paths) + ",scalar,value\n")
        for k, ((_, sc), pt) in enumerate(zip(results, points)):
            for name, val in sc.items():
                fh.write(f"{k}," + ",".join(fmt(pt[p]) for p in paths) + f",{name},{fmt(val)}\n")
    written = [long_path, scalars_path] + written
    manifest = write_manifest(
        outdir / "sweep.manifest.json",
        "sweep",
        {f"point_{k:03d}": c for k, c in enumerate(configs)},
        written,
        started,
        time.perf_counter() - t0,
        preset=preset,
        extra={"sweep": {"base": config_to_dict(base), "parameters": [{"path": p, "values": v} for p, v in axes]},
               "workers": workers},
    )
    print(long_path)
    print(scalars_path)
    print(manifest)
    return EXIT_OK


# ---------------------------------------------------------------- preset


def cmd_preset(args) -> int:
    if args.action == "list":
        for name in preset_names():
            runs = get_preset(name)
            print(f"{name}\t{', '.join(runs)}")
        return EXIT_OK
    runs = get_preset(args.name) if args.name in preset_names() else None
    if runs is None:
        raise UsageError(f"unknown preset {args.name!r}")
    _print_doc(scenario_to_doc(runs, args.name))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmqubit",
        description="Frequency-modulated qubit in dissipative and dephasing baths.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--print-config", action="store_true", help="print the default configuration and exit")
    sub = parser.add_subparsers(dest="command")

    def scenario_args(p, output_required=True):
        p.add_argument("config", nargs="?", help="JSON config (single config or {\"runs\": {...}})")
        p.add_argument("--preset", help="named scenario instead of a config file")
        p.add_argument("--print-config", action="store_true", help="print the resolved configuration and exit")
        if output_required:
            p.add_argument("-o", "--output", default=".", help="output directory (default: .)")

    p = sub.add_parser("simulate", help="write trajectory CSVs and a manifest")
    scenario_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("threshold", help="bisect for the dephasing-coupling threshold")
    scenario_args(p, output_required=False)
    p.add_argument("--run", help="label of the run to use from a multi-run config")
    p.add_argument("--alpha-lo", type=float, default=None)
    p.add_argument("--alpha-hi", type=float, default=None)
    p.add_argument("--alpha-tol", type=float, default=1e-3, help="bracket width to stop at")
    p.add_argument("--match-rtol", type=float, default=0.01, help="relative t_c match to stop at")
    p.add_argument("-o", "--output", help="also write the JSON result here")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep", help="simulate over one or two parameter axes")
    scenario_args(p)
    p.add_argument("--run", help="label of the run to use from a multi-run config")
    p.add_argument("--param", action="append", metavar="PATH=VALUES",
                   help="e.g. dephasing.alpha=0.01,0.1,1 or dissipative.R=1:100:5")
    p.add_argument("--spec", help="JSON sweep spec: {\"parameters\": [{\"path\", \"values\"}]}")
    p.add_argument("--workers", type=int, default=None, help=f"processes (default ${WORKERS_ENV} or 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="list or show named scenarios")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        if args.print_config:
            _print_doc(config_to_dict(SimulationConfig()))
            return EXIT_OK
        parser.print_help(sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print("error: invalid configuration", file=sys.stderr)
        for path, msg in exc.diagnostics:
            print(f"  {path}: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except (UsageError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, QuadratureError, FloatingPointError) as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_THRESHOLD


if __name__ == "__main__":
    sys.exit(main())
