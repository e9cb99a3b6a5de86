"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--points 3001]

Each kernel is called once untimed on both paths (JIT warm-up), then timed
``--repeat`` times; the best wall time is reported together with the max
difference between the two results.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fmqubit import _kernels as K
from fmqubit._accel import HAS_NUMBA
from fmqubit.analysis import DRIVEN_RATIO


def best_of(fn, repeat):
    out, best = None, np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(name, call, repeat, pick=lambda r: r):
    call(True)
    call(False)
    t_jit, r_jit = best_of(lambda: call(True), repeat)
    t_np, r_np = best_of(lambda: call(False), repeat)
    diff = float(np.max(np.abs(pick(r_jit) - pick(r_np))))
    print(f"{name:<22s} numba {t_jit * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms   "
          f"speedup {t_np / t_jit:6.1f}x   max|diff| {diff:.1e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=3001)
    args = ap.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    n = args.points
    lam, omega = 1.0 / 100.0, 5.0
    t_ode = np.linspace(0.0, 50.0, n)
    bench(
        "amplitude_dopri",
        lambda jit: K.amplitude_dopri(t_ode, lam, DRIVEN_RATIO, omega, 1e-9, 1e-12, 10**8, use_numba=jit),
        args.repeat,
        pick=lambda r: r[0],
    )
    t_v = np.linspace(0.0, 10.0, min(n, 4001))
    bench(
        "volterra_trapezoid",
        lambda jit: K.volterra_trapezoid(t_v, 2.0, DRIVEN_RATIO, omega, use_numba=jit),
        args.repeat,
        pick=lambda r: r[0],
    )
    bs = np.linspace(0.0, 100.0, n)
    bench(
        "dephasing_quad",
        lambda jit: K.dephasing_quad(bs, 1.0, 0.01, 35.0, 1e-9, use_numba=jit),
        args.repeat,
        pick=lambda r: r[0],
    )


if __name__ == "__main__":
    main()
