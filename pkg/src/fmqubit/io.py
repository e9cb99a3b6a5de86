"""Config ingestion, trajectory CSVs and run manifests."""

from __future__ import annotations

import hashlib
import json
import math
import platform
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from . import __version__
from ._accel import backend
from .config import ConfigError, SimulationConfig, config_from_dict, config_to_dict
from .dynamics import SimulationResult

__all__ = [
    "CSV_HEADER",
    "MANIFEST_SCHEMA",
    "load_scenario",
    "scenario_to_doc",
    "trajectory_rows",
    "write_trajectory_csv",
    "write_manifest",
    "fmt",
    "sha256_file",
]

CSV_HEADER = ("t", "coherence_abs", "pg", "pe", "gamma1", "gamma2", "gamma3", "Gamma", "Gamma_tilde", "singular")
MANIFEST_SCHEMA = "fmqubit.manifest/1"
CONFIG_SCHEMA = "fmqubit.config/1"


def fmt(x: float) -> str:
    """17 significant digits, so every float round-trips exactly."""
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def load_scenario(path: str | Path) -> dict[str, SimulationConfig]:
    """Read a config document.

    Either a single configuration object (returned under the label ``"run"``)
    or ``{"runs": {label: config, ...}}`` as printed by ``--print-config``.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError([("<file>", f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})")]) from None
    return scenario_from_doc(doc)


def scenario_from_doc(doc: Any) -> dict[str, SimulationConfig]:
    if isinstance(doc, Mapping) and "runs" in doc:
        runs = doc["runs"]
        if not isinstance(runs, Mapping) or not runs:
            raise ConfigError([("runs", "must be a non-empty object of label -> config")])
        out: dict[str, SimulationConfig] = {}
        diags: list[tuple[str, str]] = []
        for label, sub in runs.items():
            try:
                out[str(label)] = config_from_dict(sub)
            except ConfigError as exc:
                diags.extend((f"runs.{label}.{p}", m) for p, m in exc.diagnostics)
        if diags:
            raise ConfigError(diags)
        return out
    if isinstance(doc, Mapping):
        body = {k: v for k, v in doc.items() if k not in ("schema", "preset")}
        return {"run": config_from_dict(body)}
    raise ConfigError([("<root>", "config document must be a JSON object")])


def scenario_to_doc(runs: Mapping[str, SimulationConfig], preset: Optional[str] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"schema": CONFIG_SCHEMA}
    if preset is not None:
        doc["preset"] = preset
    doc["runs"] = {label: config_to_dict(cfg) for label, cfg in runs.items()}
    return doc


def trajectory_rows(result: SimulationResult) -> Iterable[str]:
    q, r, d = result.qubit, result.rates, result.dephasing
    yield ",".join(CSV_HEADER)
    cols = (q.times, q.coherence_abs, q.pg, q.pe, r.gamma1, r.gamma2, d.gamma3, r.big_gamma, d.gamma_tilde)
    singular = r.singular_mask
    for i in range(q.times.size):
        yield ",".join(fmt(c[i]) for c in cols) + ("," + ("1" if singular[i] else "0"))


def write_trajectory_csv(result: SimulationResult, path: str | Path, extra: Optional[Sequence[tuple[str, float]]] = None) -> Path:
    """Write one trajectory; ``extra`` prepends constant ``(name, value)`` columns."""
    path = Path(path)
    lines = trajectory_rows(result)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        if extra:
            prefix_names = ",".join(n for n, _ in extra)
            prefix_vals = ",".join(fmt(v) for _, v in extra)
            fh.write(prefix_names + "," + next(lines) + "\n")
            for line in lines:
                fh.write(prefix_vals + "," + line + "\n")
        else:
            for line in lines:
                fh.write(line + "\n")
    return path


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def grid_description(cfg: SimulationConfig) -> dict[str, Any]:
    return {
        "t_start": 0.0,
        "t_max": cfg.t_max,
        "n_samples": cfg.n_samples,
        "spacing": cfg.t_max / (cfg.n_samples - 1),
        "units": "gamma*t",
    }


def write_manifest(
    path: str | Path,
    command: str,
    runs: Mapping[str, SimulationConfig],
    outputs: Sequence[str | Path],
    started_utc: str,
    elapsed_s: float,
    preset: Optional[str] = None,
    extra: Optional[Mapping[str, Any]] = None,
) -> Path:
    """JSON manifest referencing every data file with its SHA-256 digest.

    Timestamps live only here, never in the data files.
    """
    path = Path(path)
    doc: dict[str, Any] = {
        "schema": MANIFEST_SCHEMA,
        "tool": {"name": "fmqubit", "version": __version__, "backend": backend(), "python": platform.python_version(),
                 "numpy": np.__version__},
        "command": command,
        "preset": preset,
        "config": scenario_to_doc(runs, preset),
        "grid": {label: grid_description(cfg) for label, cfg in runs.items()},
        "outputs": [{"file": Path(p).name, "sha256": sha256_file(p), "bytes": Path(p).stat().st_size} for p in outputs],
        "wall_clock": {"started_utc": started_utc, "elapsed_s": elapsed_s},
    }
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n", encoding="utf-8")
    return path
