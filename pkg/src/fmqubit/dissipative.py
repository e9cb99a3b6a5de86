"""Qubit amplitude under a Lorentzian dissipative bath with frequency modulation.

The zero-temperature excited-state amplitude obeys

    C'(t) = -(gamma lam / 2) e^{i phi(t)} int_0^t e^{-i phi(s)} e^{-lam (t-s)} C(s) ds,

with ``phi(t) = (delta/Omega) sin(Omega t)``. Because the kernel is a single
exponential the history integral ``y(t)`` satisfies ``y' = -lam y + e^{-i phi} C``,
so the integro-differential equation becomes a two-component ODE. Thermal
effects enter only through the exponent ``2 n + 1`` applied to ``|C|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import InitialState, Modulation

__all__ = [
    "SolverError",
    "AmplitudeTrajectory",
    "DissipativeRates",
    "solve_amplitude",
    "volterra_oracle",
    "undriven_amplitude_exact",
    "thermal_decay",
    "dissipative_observables",
    "VOLTERRA_MAX_POINTS",
]

VOLTERRA_MAX_POINTS = 20_000


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class AmplitudeTrajectory:
    """Samples of ``C(t)`` and ``C'(t)`` on a time grid (``C(0) = 1``)."""

    times: np.ndarray
    c: np.ndarray
    c_dot: np.ndarray


@dataclass(frozen=True)
class DissipativeRates:
    """Thermal dissipative rates and exponents on the trajectory grid.

    Conventions: ``f = -2 Re(C'/C)``, ``gamma1 = (n+1) f``, ``gamma2 = n f``,
    ``big_gamma = -(2n+1) ln|C|`` which equals ``(1/2) int (gamma1 + gamma2)``,
    and ``g_integral = (1/2) int exp(big_gamma) gamma1``. In this convention
    the coherence magnitude is ``|zeta0| exp(-big_gamma)``. Rates are NaN
    where ``singular_mask`` is set (``|C|`` below the guard).
    """

    times: np.ndarray
    n_bar: float
    f: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    big_gamma: np.ndarray
    g_integral: np.ndarray
    singular_mask: np.ndarray


def _check_grid(times: np.ndarray) -> np.ndarray:
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("time grid must be 1-D with at least two points")
    if times[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly increasing")
    return times


def solve_amplitude(
    modulation: Modulation,
    R: float,
    times: np.ndarray,
    rtol: float = 1e-9,
    atol: float = 1e-12,
    max_steps: int = 50_000_000,
) -> AmplitudeTrajectory:
    """Amplitude ``C(t)`` from the memory-variable reduction, integrated with
    an adaptive Dormand-Prince 5(4) pair and sampled by dense output.

    Raises
    ------
    SolverError
        On step-size underflow or when ``max_steps`` is exhausted.
    """
    times = _check_grid(times)
    lam = 1.0 / R
    ratio, omega = modulation.delta_over_omega_mod, modulation.omega_mod_over_gamma
    c, y, status, steps = _kernels.amplitude_dopri(times, lam, ratio, omega, rtol, atol, max_steps)
    if status == _kernels.STATUS_STEP_UNDERFLOW:
        raise SolverError(f"step size underflow after {steps} steps (rtol={rtol}, atol={atol})")
    if status == _kernels.STATUS_MAX_STEPS:
        raise SolverError(f"tolerance not achieved within {max_steps} steps")
    phi = ratio * np.sin(omega * times) if omega != 0.0 else np.zeros_like(times)
    c_dot = -0.5 * lam * np.exp(1j * phi) * y
    return AmplitudeTrajectory(times=times, c=c, c_dot=c_dot)


def volterra_oracle(modulation: Modulation, R: float, times: np.ndarray) -> AmplitudeTrajectory:
    """Brute-force history-quadrature solution on a uniform grid.

    Independent of the memory-variable reduction used by :func:`solve_amplitude`;
    meant only as a cross-check. Cost grows as ``len(times)**2``.
    """
    times = _check_grid(times)
    if times.size > VOLTERRA_MAX_POINTS:
        raise ValueError(f"grid too fine for the quadratic-cost oracle ({times.size} > {VOLTERRA_MAX_POINTS})")
    steps = np.diff(times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("volterra_oracle needs a uniform grid")
    c, c_dot = _kernels.volterra_trapezoid(
        times, 1.0 / R, modulation.delta_over_omega_mod, modulation.omega_mod_over_gamma
    )
    return AmplitudeTrajectory(times=times, c=c, c_dot=c_dot)


def undriven_amplitude_exact(times: np.ndarray, R: float) -> np.ndarray:
    """Closed-form ``C(t)`` for ``delta = 0``:
    ``e^{-lam t/2} [cosh(dt/2) + (lam/d) sinh(dt/2)]``, ``d = sqrt(lam^2 - 2 lam)``."""
    t = np.asarray(times, dtype=np.float64)
    lam = 1.0 / R
    d = np.sqrt(complex(lam * lam - 2.0 * lam))
    z = 0.5 * d * t
    # sinh(z)/d written as (t/2) sinh(z)/z so the critical case d = 0 is exact
    with np.errstate(invalid="ignore", divide="ignore"):
        shc = np.where(np.abs(z) < 1e-6, 1.0 + z * z / 6.0, np.sinh(z) / np.where(z == 0, 1.0, z))
    c = np.exp(-0.5 * lam * t) * (np.cosh(z) + lam * 0.5 * t * shc)
    return c.real


def thermal_decay(traj: AmplitudeTrajectory, n_bar: float, guard: float = 1e-12) -> DissipativeRates:
    """Finite-temperature rates from the zero-temperature amplitude."""
    if not n_bar >= 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar!r}")
    times = traj.times
    mag = np.abs(traj.c / traj.c[0])
    singular = np.abs(traj.c) < guard
    with np.errstate(divide="ignore", invalid="ignore"):
        f = -2.0 * np.real(traj.c_dot / traj.c)
        log_mag = np.log(mag)
    f = np.where(singular, np.nan, f)
    weight = 2.0 * n_bar + 1.0
    big_gamma = -weight * log_mag
    big_gamma[0] = 0.0
    gamma1 = (n_bar + 1.0) * f
    gamma2 = n_bar * f
    with np.errstate(over="ignore", invalid="ignore"):
        integrand = np.exp(big_gamma) * gamma1
    integrand = np.where(np.isfinite(integrand), integrand, 0.0)
    g_integral = np.zeros_like(times)
    # e^Gamma grows without bound at high temperature; G may overflow to inf
    with np.errstate(over="ignore", invalid="ignore"):
        g_integral[1:] = 0.5 * np.cumsum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(times))
    return DissipativeRates(
        times=times,
        n_bar=float(n_bar),
        f=f,
        gamma1=gamma1,
        gamma2=gamma2,
        big_gamma=big_gamma,
        g_integral=g_integral,
        singular_mask=singular,
    )


def dissipative_observables(
    traj: AmplitudeTrajectory, n_bar: float, initial: InitialState
) -> tuple[np.ndarray, np.ndarray]:
    """``(|zeta(t)|, P_g(t))`` under the thermal dissipative bath alone."""
    weight = 2.0 * n_bar + 1.0
    mag = np.abs(traj.c / traj.c[0])
    coh = abs(complex(initial.zeta0)) * mag**weight
    survive = mag ** (2.0 * weight)
    pg = initial.pg0 * survive + (n_bar + 1.0) / weight * (1.0 - survive)
    return coh, pg
