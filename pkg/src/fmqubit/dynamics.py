"""Full qubit trajectory under both baths.

The two channels act independently, so their coherence decay exponents add:
``|zeta(t)| = |zeta0| |C(t)|^{2n+1} exp(-Gamma~(t))``. Populations are set by
the dissipative channel alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import InitialState, SimulationConfig, validate
from .dephasing import DephasingTrajectory, dephasing_exponent
from .dissipative import (
    AmplitudeTrajectory,
    DissipativeRates,
    dissipative_observables,
    solve_amplitude,
    thermal_decay,
)

__all__ = [
    "QubitTrajectory",
    "PositivityReport",
    "SimulationResult",
    "combine",
    "positivity_audit",
    "simulate",
]

POSITIVITY_MARGIN = -1e-10


@dataclass(frozen=True)
class QubitTrajectory:
    times: np.ndarray
    coherence_abs: np.ndarray
    pg: np.ndarray
    positivity_ok: np.ndarray
    coherence_phase: Optional[np.ndarray] = None

    @property
    def pe(self) -> np.ndarray:
        return 1.0 - self.pg


@dataclass(frozen=True)
class PositivityReport:
    ok: bool
    worst_margin: float
    worst_index: int
    n_violations: int


@dataclass(frozen=True)
class SimulationResult:
    config: SimulationConfig
    amplitude: AmplitudeTrajectory
    rates: DissipativeRates
    dephasing: DephasingTrajectory
    qubit: QubitTrajectory


def _margins(coherence_abs: np.ndarray, pg: np.ndarray) -> np.ndarray:
    return np.minimum.reduce([pg, 1.0 - pg, pg * (1.0 - pg) - coherence_abs**2])


def combine(
    c_traj: AmplitudeTrajectory,
    rates: DissipativeRates,
    deph: DephasingTrajectory,
    initial: InitialState,
    n_bar: float,
    omega0_over_gamma: Optional[float] = None,
    modulation=None,
) -> QubitTrajectory:
    """Assemble ``|zeta(t)|`` and ``P_g(t)`` from the two channels.

    When ``omega0_over_gamma`` is given the phase
    ``arg zeta0 + (omega0 t + (delta/Omega) sin(Omega t)) / 2`` is attached,
    reduced to ``(-pi, pi]``.
    """
    times = c_traj.times
    if not (np.array_equal(times, rates.times) and np.array_equal(times, deph.times)):
        raise ValueError("amplitude, rate and dephasing trajectories must share one time grid")
    diss_coh, pg = dissipative_observables(c_traj, n_bar, initial)
    coh = diss_coh * np.exp(-deph.gamma_tilde)
    ok = _margins(coh, pg) >= POSITIVITY_MARGIN
    phase = None
    if omega0_over_gamma is not None:
        wobble = 0.0
        if modulation is not None and modulation.omega_mod_over_gamma != 0.0:
            wobble = modulation.delta_over_omega_mod * np.sin(modulation.omega_mod_over_gamma * times)
        raw = np.angle(complex(initial.zeta0)) + 0.5 * (omega0_over_gamma * times + wobble)
        phase = np.angle(np.exp(1j * raw))
    return QubitTrajectory(times=times, coherence_abs=coh, pg=pg, positivity_ok=ok, coherence_phase=phase)


def positivity_audit(traj: QubitTrajectory) -> PositivityReport:
    """Per-sample check of ``0 <= P_g <= 1`` and ``|zeta|^2 <= P_g (1 - P_g)``."""
    margins = _margins(traj.coherence_abs, traj.pg)
    k = int(np.argmin(margins))
    bad = int(np.count_nonzero(margins < POSITIVITY_MARGIN))
    return PositivityReport(ok=bad == 0, worst_margin=float(margins[k]), worst_index=k, n_violations=bad)


def simulate(config: SimulationConfig, with_phase: bool = False) -> SimulationResult:
    """Run both channels for one validated configuration."""
    config = validate(config)
    times = config.times
    num = config.numeric
    amp = solve_amplitude(config.modulation, config.dissipative.R, times, rtol=num.rtol, atol=num.atol)
    rates = thermal_decay(amp, config.n_bar, guard=num.singular_guard)
    deph = dephasing_exponent(config.dephasing, times, tol=num.quad_tol, cutoff=num.quad_cutoff)
    qubit = combine(
        amp,
        rates,
        deph,
        config.initial,
        config.n_bar,
        omega0_over_gamma=config.omega0_over_gamma if with_phase else None,
        modulation=config.modulation,
    )
    return SimulationResult(config=config, amplitude=amp, rates=rates, dephasing=deph, qubit=qubit)
