"""Coherence-time extraction, the dephasing-coupling threshold, and J0 utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .config import DephasingReservoir, Modulation, SimulationConfig, validate
from .dephasing import dephasing_exponent
from .dissipative import solve_amplitude

__all__ = [
    "Envelope",
    "ThresholdIterate",
    "ThresholdResult",
    "ThresholdError",
    "BracketError",
    "GridExtensionError",
    "envelope",
    "coherence_time",
    "alpha_threshold",
    "bessel_j0",
    "j0_first_zero",
    "DRIVEN_RATIO",
]

# optimal modulation ratio delta/Omega as quoted to 5 decimals; the first zero of J0
DRIVEN_RATIO = 2.40483


@dataclass(frozen=True)
class Envelope:
    """Upper envelope of a sampled oscillating decay.

    ``values`` is the envelope on the full sample grid ``times``; the peaks
    it interpolates are ``peak_times``/``peak_values``.
    """

    peak_times: np.ndarray
    peak_values: np.ndarray
    times: np.ndarray
    values: np.ndarray
    kind: str = "linear"


def envelope(times, series, kind: str = "linear") -> Envelope:
    """Envelope through ``t = 0`` and every strict interior local maximum.

    Between consecutive peaks the envelope is the linear interpolant
    (``kind="linear"``) or a monotone cubic (``kind="pchip"``); after the last
    peak it follows the series itself. A series with no interior maximum,
    e.g. a monotone decay, is its own envelope.
    """
    t = np.asarray(times, dtype=np.float64)
    x = np.asarray(series, dtype=np.float64)
    if t.shape != x.shape or t.ndim != 1:
        raise ValueError("times and series must be 1-D arrays of equal length")
    if x.size < 3:
        raise ValueError("envelope needs at least 3 samples")
    interior = np.flatnonzero((x[1:-1] > x[:-2]) & (x[1:-1] > x[2:])) + 1
    idx = np.concatenate(([0], interior))
    values = x.copy()
    last = idx[-1]
    if idx.size > 1:
        if kind == "linear":
            values[: last + 1] = np.interp(t[: last + 1], t[idx], x[idx])
        elif kind == "pchip":
            from scipy.interpolate import PchipInterpolator

            values[: last + 1] = PchipInterpolator(t[idx], x[idx])(t[: last + 1])
        else:
            raise ValueError(f"unknown envelope kind {kind!r}")
    return Envelope(peak_times=t[idx], peak_values=x[idx], times=t, values=values, kind=kind)


def coherence_time(times, series, zeta0: Optional[float] = None, kind: str = "linear") -> Optional[float]:
    """First time the envelope of ``series`` falls to ``|zeta0|/e``.

    ``zeta0`` defaults to ``series[0]``. The crossing is located by linear
    inverse interpolation between the bracketing envelope samples. Returns
    ``None`` when the envelope never drops that low on the grid.
    """
    env = envelope(times, series, kind=kind)
    level = (abs(series[0]) if zeta0 is None else abs(zeta0)) / math.e
    if level <= 0:
        raise ValueError("coherence_time needs a nonzero initial coherence")
    below = np.flatnonzero(env.values < level)
    if below.size == 0:
        return None
    k = int(below[0])
    if k == 0:
        return 0.0
    t0, t1 = env.times[k - 1], env.times[k]
    e0, e1 = env.values[k - 1], env.values[k]
    return float(t0 + (level - e0) * (t1 - t0) / (e1 - e0))


class ThresholdError(RuntimeError):
    pass


class BracketError(ThresholdError):
    """No sign change of ``t_c(driven) - t_c(undriven)`` over the bracket."""

    def __init__(self, message: str, h_lo: float, h_hi: float):
        super().__init__(message)
        self.h_lo = h_lo
        self.h_hi = h_hi


class GridExtensionError(ThresholdError):
    """A coherence time needed by the search lies beyond ``t_max``."""


@dataclass(frozen=True)
class ThresholdIterate:
    alpha: float
    t_c_driven: Optional[float]
    t_c_undriven: Optional[float]
    h: float


@dataclass(frozen=True)
class ThresholdResult:
    alpha_th: float
    t_c_driven: float
    t_c_undriven: float
    iterations: int
    bracket: tuple[float, float]
    converged_on: str
    trace: list[ThresholdIterate] = field(default_factory=list)


class _Branches:
    """Coherence traces for one base config as a function of ``alpha`` only.

    The dissipative amplitudes and the unit-coupling dephasing exponent are
    computed once; ``Gamma~`` is linear in ``alpha``.
    """

    def __init__(self, config: SimulationConfig, driven: Modulation):
        config = validate(replace(config, modulation=driven))
        num = config.numeric
        self.times = config.times
        self.kind = num.envelope_kind
        weight = 2.0 * config.n_bar + 1.0
        z0 = abs(complex(config.initial.zeta0))
        if z0 == 0.0:
            raise ValueError("threshold search needs a nonzero initial coherence")
        undriven = Modulation(0.0, 0.0)
        mags = {}
        for label, mod in (("driven", driven), ("undriven", undriven)):
            amp = solve_amplitude(mod, config.dissipative.R, self.times, rtol=num.rtol, atol=num.atol)
            mags[label] = z0 * np.abs(amp.c) ** weight
        self.mags = mags
        unit = replace(config.dephasing, alpha=1.0)
        self.unit_exponent = dephasing_exponent(unit, self.times, tol=num.quad_tol, cutoff=num.quad_cutoff).gamma_tilde

    def evaluate(self, alpha: float) -> ThresholdIterate:
        damp = np.exp(-alpha * self.unit_exponent)
        td = coherence_time(self.times, self.mags["driven"] * damp, kind=self.kind)
        tu = coherence_time(self.times, self.mags["undriven"] * damp, kind=self.kind)
        if td is None and tu is None:
            raise GridExtensionError(
                f"neither coherence time is reached by t_max={self.times[-1]:g} at alpha={alpha:g}; "
                "increase t_max"
            )
        if td is None:
            h = math.inf
        elif tu is None:
            h = -math.inf
        else:
            h = td - tu
        return ThresholdIterate(alpha=float(alpha), t_c_driven=td, t_c_undriven=tu, h=h)


def alpha_threshold(
    base_config: SimulationConfig,
    alpha_bracket: tuple[float, float] = (1e-3, 2.0),
    alpha_tol: float = 1e-3,
    match_rtol: float = 0.01,
    driven: Optional[Modulation] = None,
    max_iter: int = 200,
) -> ThresholdResult:
    """Dephasing coupling at which driven and undriven coherence times coincide.

    Bisection on ``h(alpha) = t_c(driven) - t_c(undriven)`` until the bracket
    is narrower than ``alpha_tol`` or ``|h|`` is within ``match_rtol`` of the
    undriven coherence time. ``driven`` defaults to ``delta = 2.40483 Omega``
    at the base config's ``Omega`` (5 gamma if that is zero). A coherence time
    beyond ``t_max`` counts as longer than any reached one, so it fixes the
    sign of ``h``; the search fails only if the sign cannot be decided.

    Raises
    ------
    BracketError
        If ``h`` has the same sign at both ends of the bracket (or the bracket
        is degenerate).
    GridExtensionError
        If a needed coherence time is beyond the grid.
    """
    lo, hi = (float(a) for a in alpha_bracket)
    if driven is None:
        omega = base_config.modulation.omega_mod_over_gamma or 5.0
        driven = Modulation(DRIVEN_RATIO, omega)
    if not (0.0 <= lo < hi):
        raise BracketError(f"degenerate alpha bracket [{lo:g}, {hi:g}]", math.nan, math.nan)
    branches = _Branches(base_config, driven)
    trace: list[ThresholdIterate] = []
    at_lo = branches.evaluate(lo)
    at_hi = branches.evaluate(hi)
    trace += [at_lo, at_hi]
    if not (at_lo.h > 0 > at_hi.h or at_lo.h < 0 < at_hi.h):
        raise BracketError(
            f"no sign change of t_c(driven) - t_c(undriven) on [{lo:g}, {hi:g}]: "
            f"h(lo)={at_lo.h:g}, h(hi)={at_hi.h:g}",
            at_lo.h,
            at_hi.h,
        )
    sign_lo = math.copysign(1.0, at_lo.h)
    best = at_lo if abs(at_lo.h) < abs(at_hi.h) else at_hi
    converged_on = "bracket"
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        it = branches.evaluate(mid)
        trace.append(it)
        best = it
        if it.t_c_undriven is not None and abs(it.h) <= match_rtol * it.t_c_undriven:
            converged_on = "match"
            break
        if math.copysign(1.0, it.h) == sign_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= alpha_tol:
            best = branches.evaluate(0.5 * (lo + hi))
            trace.append(best)
            break
    if best.t_c_driven is None or best.t_c_undriven is None:
        raise GridExtensionError(
            f"coherence time beyond t_max={branches.times[-1]:g} at alpha={best.alpha:g}; increase t_max"
        )
    return ThresholdResult(
        alpha_th=best.alpha,
        t_c_driven=best.t_c_driven,
        t_c_undriven=best.t_c_undriven,
        iterations=len(trace) - 2,
        bracket=(lo, hi),
        converged_on=converged_on,
        trace=trace,
    )


def _j0_series(x: float) -> float:
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        total += term
        if abs(term) < 1e-17 * max(1.0, abs(total)) and k > 2:
            return total


def _j0_asymptotic(x: float) -> float:
    # Hankel expansion: J0 ~ sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    p, q = 0.0, 0.0
    a = 1.0
    k = 0
    prev = math.inf
    while k < 60:
        term = a / x**k
        if abs(term) > prev:
            break
        prev = abs(term)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q -= sign * term
        a *= (2 * k + 1) ** 2 / (8.0 * (k + 1))
        k += 1
        if prev < 1e-17:
            break
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_j0(x: float) -> float:
    """Bessel function of the first kind, order 0 (power series for ``|x| <= 12``)."""
    x = abs(float(x))
    if not math.isfinite(x):
        raise ValueError("bessel_j0 needs a finite argument")
    return _j0_series(x) if x <= 12.0 else _j0_asymptotic(x)


def j0_first_zero() -> float:
    """First positive zero of J0 by bisection on the power series (~2.404825557695773)."""
    lo, hi = 2.0, 3.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _j0_series(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
