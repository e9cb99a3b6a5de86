"""Run parameters for the modulated-qubit simulator.

Everything is dimensionless. Times are ``gamma * t`` and rates are in units of
the spontaneous emission rate ``gamma`` of the dissipative bath, so the
Lorentzian width is ``lambda = 1 / R``. Temperatures are the ratios used in
the figure captions: ``tau1 = k_B T1 / (hbar omega0)`` for the dissipative
bath and ``theta2 = k_B T2 / (hbar omega_c)`` for the dephasing bath.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from functools import cached_property
from typing import Any, Mapping

import numpy as np

__all__ = [
    "ConfigError",
    "Modulation",
    "DissipativeReservoir",
    "DephasingReservoir",
    "InitialState",
    "NumericOptions",
    "SimulationConfig",
    "mean_occupation",
    "validate",
    "config_from_dict",
    "config_to_dict",
    "MIN_SAMPLES_PER_PERIOD",
]

MIN_SAMPLES_PER_PERIOD = 40


class ConfigError(ValueError):
    """Invalid configuration. ``diagnostics`` holds ``(field_path, message)`` pairs."""

    def __init__(self, diagnostics: list[tuple[str, str]]):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(f"{path}: {msg}" for path, msg in self.diagnostics)
        super().__init__(f"invalid configuration: {lines}")


def mean_occupation(tau: float) -> float:
    """Bose-Einstein occupation ``1 / (exp(1/tau) - 1)`` of the bath at the qubit frequency.

    ``tau`` is ``k_B T / (hbar omega0)``; ``tau = 0`` gives the zero-temperature
    limit 0 and very small ``tau`` underflows cleanly to 0.
    """
    tau = float(tau)
    if not tau >= 0.0:
        raise ValueError(f"temperature ratio must be >= 0, got {tau!r}")
    if tau == 0.0:
        return 0.0
    inv = 1.0 / tau
    if inv > 745.0:
        return 0.0
    return 1.0 / math.expm1(inv)


@dataclass(frozen=True)
class Modulation:
    """Sinusoidal frequency modulation ``omega0 + delta cos(Omega t)``.

    ``(0, 0)`` is the undriven qubit.
    """

    delta_over_omega_mod: float = 0.0
    omega_mod_over_gamma: float = 0.0

    @property
    def is_driven(self) -> bool:
        return self.delta_over_omega_mod != 0.0 and self.omega_mod_over_gamma != 0.0


@dataclass(frozen=True)
class DissipativeReservoir:
    R: float = 100.0
    tau1: float = 0.0


@dataclass(frozen=True)
class DephasingReservoir:
    alpha: float = 0.0
    s: float = 1.0
    theta2: float = 0.0
    omega_c_over_gamma: float = 1.0


@dataclass(frozen=True)
class InitialState:
    zeta0: complex = 0.5
    pg0: float = 0.5


@dataclass(frozen=True)
class NumericOptions:
    rtol: float = 1e-9
    atol: float = 1e-12
    quad_tol: float = 1e-9
    quad_cutoff: float = 35.0
    singular_guard: float = 1e-12
    envelope_kind: str = "linear"


@dataclass(frozen=True)
class SimulationConfig:
    modulation: Modulation = field(default_factory=Modulation)
    dissipative: DissipativeReservoir = field(default_factory=DissipativeReservoir)
    dephasing: DephasingReservoir = field(default_factory=DephasingReservoir)
    initial: InitialState = field(default_factory=InitialState)
    t_max: float = 100.0
    n_samples: int = 5001
    omega0_over_gamma: float = 1e5
    numeric: NumericOptions = field(default_factory=NumericOptions)

    @cached_property
    def lam(self) -> float:
        """Lorentzian width in units of gamma."""
        return 1.0 / self.dissipative.R

    @cached_property
    def n_bar(self) -> float:
        return mean_occupation(self.dissipative.tau1)

    @cached_property
    def times(self) -> np.ndarray:
        t = np.linspace(0.0, self.t_max, self.n_samples)
        t.setflags(write=False)
        return t

    def with_(self, **changes: Any) -> "SimulationConfig":
        """Copy with dotted-path overrides, e.g. ``with_(**{"dephasing.alpha": 0.1})``."""
        return set_path(self, changes)


_SECTIONS = {
    "modulation": Modulation,
    "dissipative": DissipativeReservoir,
    "dephasing": DephasingReservoir,
    "initial": InitialState,
    "numeric": NumericOptions,
}
_TOP_SCALARS = {"t_max": float, "n_samples": int, "omega0_over_gamma": float}


def _finite(x: float) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


def validate(config: SimulationConfig) -> SimulationConfig:
    """Check every invariant of ``config``; return it unchanged or raise :class:`ConfigError`.

    Derived quantities (``lam``, ``n_bar``) are computed here so a validated
    config carries them cached. Idempotent.
    """
    diags: list[tuple[str, str]] = []

    def need(ok: bool, path: str, msg: str) -> None:
        if not ok:
            diags.append((path, msg))

    m, d, p, i, num = config.modulation, config.dissipative, config.dephasing, config.initial, config.numeric
    for section, obj in (("modulation", m), ("dissipative", d), ("dephasing", p), ("numeric", num)):
        for f in fields(obj):
            v = getattr(obj, f.name)
            if f.name != "envelope_kind":
                need(_finite(v), f"{section}.{f.name}", f"must be a finite number, got {v!r}")
    for name in _TOP_SCALARS:
        v = getattr(config, name)
        need(_finite(v), name, f"must be a finite number, got {v!r}")
    need(isinstance(i.zeta0, (int, float, complex)) and math.isfinite(abs(complex(i.zeta0))),
         "initial.zeta0", f"must be a finite complex number, got {i.zeta0!r}")
    need(_finite(i.pg0), "initial.pg0", f"must be a finite number, got {i.pg0!r}")
    if diags:
        raise ConfigError(diags)

    need(m.delta_over_omega_mod >= 0, "modulation.delta_over_omega_mod", "must be >= 0")
    need(m.omega_mod_over_gamma >= 0, "modulation.omega_mod_over_gamma", "must be >= 0")
    need(d.R > 0, "dissipative.R", "must be > 0")
    need(d.tau1 >= 0, "dissipative.tau1", "must be >= 0")
    need(p.alpha >= 0, "dephasing.alpha", "must be >= 0")
    need(p.s > 0, "dephasing.s", "must be > 0")
    need(p.theta2 >= 0, "dephasing.theta2", "must be >= 0")
    need(p.omega_c_over_gamma > 0, "dephasing.omega_c_over_gamma", "must be > 0")
    need(0 <= i.pg0 <= 1, "initial.pg0", "must lie in [0, 1]")
    if 0 <= i.pg0 <= 1:
        need(abs(complex(i.zeta0)) ** 2 <= i.pg0 * (1 - i.pg0) + 1e-15, "initial.zeta0",
             "|zeta0|^2 must not exceed pg0*(1-pg0) (density matrix positivity)")
    need(config.t_max > 0, "t_max", "must be > 0")
    need(float(config.n_samples).is_integer() and config.n_samples >= 2, "n_samples", "must be an integer >= 2")
    need(config.omega0_over_gamma > 0, "omega0_over_gamma", "must be > 0")
    need(num.rtol > 0 and num.atol > 0, "numeric.rtol", "tolerances must be > 0")
    need(num.quad_tol > 0, "numeric.quad_tol", "must be > 0")
    need(num.quad_cutoff > 0, "numeric.quad_cutoff", "must be > 0")
    need(num.singular_guard >= 0, "numeric.singular_guard", "must be >= 0")
    need(num.envelope_kind in ("linear", "pchip"), "numeric.envelope_kind", "must be 'linear' or 'pchip'")
    if m.omega_mod_over_gamma > 0 and config.t_max > 0 and config.n_samples >= 2:
        per_period = (config.n_samples - 1) / config.t_max * (2 * math.pi / m.omega_mod_over_gamma)
        need(per_period >= MIN_SAMPLES_PER_PERIOD, "n_samples",
             f"grid has {per_period:.1f} samples per modulation period, need >= {MIN_SAMPLES_PER_PERIOD}")
    if diags:
        raise ConfigError(diags)

    config.lam, config.n_bar  # noqa: B018 - populate caches
    return config


def _coerce_complex(v: Any, path: str) -> complex:
    if isinstance(v, bool):
        raise ConfigError([(path, f"expected a number, got {v!r}")])
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(_coerce_float(v[0], path), _coerce_float(v[1], path))
    if isinstance(v, Mapping) and set(v) <= {"re", "im"}:
        return complex(_coerce_float(v.get("re", 0.0), path), _coerce_float(v.get("im", 0.0), path))
    raise ConfigError([(path, f"expected a number, [re, im] or {{re, im}}, got {v!r}")])


def _coerce_float(v: Any, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError([(path, f"expected a number, got {v!r}")])
    return float(v)


def _coerce_int(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not float(v).is_integer():
        raise ConfigError([(path, f"expected an integer, got {v!r}")])
    return int(v)


def config_from_dict(doc: Mapping[str, Any]) -> SimulationConfig:
    """Build a config from a JSON-style mapping. Missing keys take defaults; unknown keys are errors."""
    if not isinstance(doc, Mapping):
        raise ConfigError([("<root>", "config document must be an object")])
    diags: list[tuple[str, str]] = []
    kwargs: dict[str, Any] = {}
    for key, value in doc.items():
        if key in _SECTIONS:
            cls = _SECTIONS[key]
            if not isinstance(value, Mapping):
                diags.append((key, "must be an object"))
                continue
            names = {f.name for f in fields(cls)}
            sub: dict[str, Any] = {}
            for k, v in value.items():
                path = f"{key}.{k}"
                if k not in names:
                    diags.append((path, "unknown field"))
                    continue
                try:
                    if k == "zeta0":
                        sub[k] = _coerce_complex(v, path)
                    elif k == "envelope_kind":
                        if not isinstance(v, str):
                            raise ConfigError([(path, f"expected a string, got {v!r}")])
                        sub[k] = v
                    else:
                        sub[k] = _coerce_float(v, path)
                except ConfigError as exc:
                    diags.extend(exc.diagnostics)
            kwargs[key] = cls(**sub)
        elif key in _TOP_SCALARS:
            try:
                if _TOP_SCALARS[key] is int:
                    kwargs[key] = _coerce_int(value, key)
                else:
                    kwargs[key] = _coerce_float(value, key)
            except ConfigError as exc:
                diags.extend(exc.diagnostics)
        else:
            diags.append((key, "unknown field"))
    if diags:
        raise ConfigError(diags)
    return SimulationConfig(**kwargs)


def config_to_dict(config: SimulationConfig) -> dict[str, Any]:
    """Inverse of :func:`config_from_dict`; ``zeta0`` is written as ``[re, im]``."""
    out: dict[str, Any] = {}
    for name in _SECTIONS:
        section = asdict(getattr(config, name))
        if name == "initial":
            z = complex(section["zeta0"])
            section["zeta0"] = [z.real, z.imag]
        out[name] = section
    for name, typ in _TOP_SCALARS.items():
        out[name] = typ(getattr(config, name))
    return out


def set_path(config: SimulationConfig, changes: Mapping[str, Any]) -> SimulationConfig:
    """Apply ``{"section.field": value}`` overrides. Unknown paths raise :class:`ConfigError`."""
    for path, value in changes.items():
        head, _, tail = path.partition(".")
        if head in _SECTIONS and tail and tail in {f.name for f in fields(_SECTIONS[head])}:
            config = replace(config, **{head: replace(getattr(config, head), **{tail: value})})
        elif head in _TOP_SCALARS and not tail:
            if _TOP_SCALARS[head] is int and isinstance(value, float) and value.is_integer():
                value = int(value)
            config = replace(config, **{head: value})
        else:
            raise ConfigError([(path, "unknown parameter path")])
    return config
