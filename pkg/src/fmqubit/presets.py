"""Named scenarios matching the figure captions and the threshold study.

A preset is an ordered mapping ``label -> SimulationConfig``. Figure presets
hold one run per plotted curve; ``lowT``/``midT``/``highT`` hold a single
driven base configuration for :func:`fmqubit.analysis.alpha_threshold`.

All presets use ``R = 100``, ``Omega = 5 gamma`` and ``delta = 2.40483 Omega``
for the driven branch. The dephasing cutoff ``omega_c/gamma`` is not given by
the captions and stays at the default of 1.
"""

from __future__ import annotations

from dataclasses import replace

from .analysis import DRIVEN_RATIO
from .config import DephasingReservoir, DissipativeReservoir, Modulation, SimulationConfig

__all__ = ["PRESETS", "get_preset", "preset_names", "THRESHOLD_PRESETS", "FIGURE_PRESETS"]

DRIVEN = Modulation(DRIVEN_RATIO, 5.0)
UNDRIVEN = Modulation(0.0, 0.0)
# 0.02 gamma^-1 spacing gives ~63 samples per modulation period at Omega = 5 gamma
_DT = 0.02

# (tau1, theta2) pairs from the three panels of the combined-noise figure
LOW_T = (2.6e-3, 1e-5)
MID_T = (2.6, 1e-2)
HIGH_T = (260.0, 1.0)


def _base(t_max: float, tau1: float = 0.0, alpha: float = 0.0, theta2: float = 0.0) -> SimulationConfig:
    return SimulationConfig(
        modulation=DRIVEN,
        dissipative=DissipativeReservoir(R=100.0, tau1=tau1),
        dephasing=DephasingReservoir(alpha=alpha, s=1.0, theta2=theta2, omega_c_over_gamma=1.0),
        t_max=t_max,
        n_samples=int(round(t_max / _DT)) + 1,
    )


def _pair(base: SimulationConfig) -> dict[str, SimulationConfig]:
    return {"driven": replace(base, modulation=DRIVEN), "undriven": replace(base, modulation=UNDRIVEN)}


def _build() -> dict[str, dict[str, SimulationConfig]]:
    p: dict[str, dict[str, SimulationConfig]] = {}
    p["fig2"] = _pair(_base(300.0, tau1=2.6e-3))
    p["fig3"] = _pair(_base(300.0, tau1=2.6))
    p["fig4"] = _pair(_base(300.0, tau1=260.0))
    p["fig5"] = {
        f"alpha_{a:g}": replace(_base(300.0, alpha=a), modulation=UNDRIVEN) for a in (0.01, 0.1, 0.5, 1.0)
    }
    for panel, (tau1, theta2) in zip("abc", (LOW_T, MID_T, HIGH_T)):
        p[f"fig6{panel}"] = _pair(_base(300.0, tau1=tau1, alpha=0.01, theta2=theta2))
    for name, (tau1, theta2) in (("lowT", LOW_T), ("midT", MID_T), ("highT", HIGH_T)):
        p[name] = {"base": _base(300.0, tau1=tau1, alpha=0.01, theta2=theta2)}
    return p


PRESETS = _build()
FIGURE_PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b", "fig6c")
THRESHOLD_PRESETS = ("lowT", "midT", "highT")


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> dict[str, SimulationConfig]:
    try:
        return dict(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
