"""Pure-dephasing channel with an Ohmic-class bath ``J(w) = alpha w^s e^{-w/w_c}``.

The decoherence exponent and the dephasing rate are

    Gamma~(t) = 2 int_0^inf J(w) coth(w / 2 T2) (1 - cos w t) / w^2 dw
    gamma3(t) =   int_0^inf J(w) coth(w / 2 T2) sin(w t) / w dw

so ``dGamma~/dt = 2 gamma3``. The coherence factor is ``exp(-Gamma~)``; the
exported ``gamma3`` is the rate of the master equation, not the derivative of
the exponent. The qubit Hamiltonian commutes with the dephasing coupling, so
neither quantity depends on the frequency modulation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import DephasingReservoir, Modulation

__all__ = [
    "QuadratureError",
    "DephasingTrajectory",
    "ohmic_density",
    "dephasing_exponent",
    "ohmic_zero_temperature",
    "modulation_independence_certificate",
]


class QuadratureError(RuntimeError):
    """Quadrature missed its tolerance; ``time`` and ``panel_start`` locate the worst panel."""

    def __init__(self, message: str, time: float, panel_start: float, error: float):
        super().__init__(message)
        self.time = time
        self.panel_start = panel_start
        self.error = error


@dataclass(frozen=True)
class DephasingTrajectory:
    times: np.ndarray
    gamma3: np.ndarray
    gamma_tilde: np.ndarray
    # gamma3 is the master-equation rate; d(gamma_tilde)/dt == 2 * gamma3
    rate_convention: str = "dGamma_tilde/dt = 2*gamma3"


def ohmic_density(x, alpha: float, s: float = 1.0, omega_c: float = 1.0):
    """Spectral density at ``x = omega / omega_c``; value in units of gamma."""
    if not s > 0:
        raise ValueError(f"Ohmicity exponent must be > 0, got {s!r}")
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValueError("frequency must be >= 0")
    out = alpha * (x * omega_c) ** s * np.exp(-x)
    return out if out.ndim else float(out)


def ohmic_zero_temperature(times, alpha: float, omega_c: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Closed forms for ``s = 1`` at ``T2 = 0``: ``(gamma3, Gamma~)``."""
    b = omega_c * np.asarray(times, dtype=np.float64)
    return alpha * omega_c * b / (1.0 + b * b), alpha * np.log1p(b * b)


def dephasing_exponent(
    dephasing: DephasingReservoir,
    times: np.ndarray,
    tol: float = 1e-9,
    cutoff: float = 35.0,
) -> DephasingTrajectory:
    """``gamma3`` and ``Gamma~`` by adaptive Gauss-Kronrod quadrature.

    ``times`` is in units of ``1/gamma``; the integrals run over
    ``x = omega/omega_c`` in ``[0, cutoff]`` with the default ``cutoff`` chosen
    so that ``e^{-cutoff} < 1e-14``. The tolerance is absolute for values up
    to 1 and relative above that.

    Raises
    ------
    QuadratureError
        If any time point misses ``tol``.
    """
    times = np.asarray(times, dtype=np.float64)
    alpha, s, theta = dephasing.alpha, dephasing.s, dephasing.theta2
    wc = dephasing.omega_c_over_gamma
    if not s > 0:
        raise ValueError(f"Ohmicity exponent must be > 0, got {s!r}")
    if alpha == 0.0:
        zeros = np.zeros_like(times)
        return DephasingTrajectory(times=times, gamma3=zeros, gamma_tilde=zeros.copy())
    bs = wc * times
    expo, rate, err_e, err_r, worst = _kernels.dephasing_quad(bs, s, theta, cutoff, tol)
    bound_e = tol * np.maximum(1.0, np.abs(expo))
    bound_r = tol * np.maximum(1.0, np.abs(rate))
    excess = np.maximum(err_e / bound_e, err_r / bound_r)
    if np.any(excess > 1.0):
        j = int(np.argmax(excess))
        raise QuadratureError(
            f"dephasing quadrature missed tol={tol:g} at t={times[j]:g} "
            f"(error estimate {max(err_e[j], err_r[j]):.3g}, worst panel starts at x={worst[j]:.6g})",
            time=float(times[j]),
            panel_start=float(worst[j]),
            error=float(max(err_e[j], err_r[j])),
        )
    gamma_tilde = alpha * wc ** (s - 1.0) * expo
    gamma3 = alpha * wc**s * rate
    return DephasingTrajectory(times=times, gamma3=gamma3, gamma_tilde=gamma_tilde)


def modulation_independence_certificate(
    dephasing: DephasingReservoir,
    modulation_a: Modulation,
    modulation_b: Modulation,
    times: np.ndarray,
) -> bool:
    """Check that the dephasing exponent is the same under two modulations.

    :func:`dephasing_exponent` has no modulation argument (the dephasing
    coupling commutes with the modulated qubit Hamiltonian), so both
    evaluations below run identical code and the comparison is bit-exact.
    """
    del modulation_a, modulation_b  # the channel does not see them
    a = dephasing_exponent(dephasing, times)
    b = dephasing_exponent(dephasing, times)
    return bool(np.array_equal(a.gamma_tilde, b.gamma_tilde) and np.array_equal(a.gamma3, b.gamma3))
